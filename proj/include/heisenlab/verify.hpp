#pragma once

// Seeded generators, the identity-checking suite, and the JSON report.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "heisenlab/pseudodiff.hpp"

namespace heisenlab {

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 20240531;

/// HEISENLAB_SEED if set and numeric, kDefaultSeed otherwise.
std::uint64_t default_seed();

struct SuiteConfig {
  std::vector<int> moduli{5};
  int jmax = 2;
  int n_theta = 0;          // 0 selects 4 * J + 1, J the largest |j| in use
  std::vector<int> modes;   // empty selects every admissible 0 < |j| <= jmax
  int trials = 20;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;  // replaces every asserted tolerance when set
  std::string out;

  int effective_n_theta() const;
  /// Throws UsageError describing the first problem found.
  void validate() const;
  HeisenbergSpace make_space() const;
};

/// Deterministic complex normal stream, keyed by (seed, stream name).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view stream);
  cplx complex();
  int uniform_int(int lo, int hi);  // inclusive
  cplx unit();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

ScalarSymbol random_symbol(int order, RandomStream& rng);
ComplexOperator random_operator(int dim, RandomStream& rng);
/// Modes of the space; the zero mode is filled only when requested.
HFunction random_h_function(const HeisenbergSpace& space, RandomStream& rng, bool with_zero_mode);
OperatorSymbolField random_symbol_field(const HeisenbergSpace& space, RandomStream& rng);
/// Each alpha(p) carries the modes {-j : j in the mode set}, no zero mode.
AlphaField random_alpha_field(const HeisenbergSpace& space, RandomStream& rng);
HPoint random_point(const FiniteAbelianGroup& g, RandomStream& rng);

enum class CheckStatus { kAssertedPass, kAssertedFail, kReported };
std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::kReported;
  double max_abs_error = 0;
  double tolerance = 0;
  int trials = 0;
  std::string notes;
};

std::vector<CheckResult> run_suite(const SuiteConfig& config);
bool suite_passed(const std::vector<CheckResult>& results);

/// Deterministic JSON: fixed key order, checks in suite order, doubles with
/// 17 significant digits.
std::string render_report(const SuiteConfig& config, const std::vector<CheckResult>& results);
void emit_report(const SuiteConfig& config, const std::vector<CheckResult>& results,
                 const std::string& path);

}  // namespace heisenlab
