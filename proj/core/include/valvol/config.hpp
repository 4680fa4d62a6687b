#pragma once

// Experiment configuration: a sectioned plain-text format
//
//   [variety]      kind = projective | hypersurface, n = N, g = POLY
//   [divisor]      one term per line: POLY ; SHIFT
//   [conditions]   one condition per line: POLY ; GAMMA
//   [experiment]   key = value (m, n_max, schedule, samples, seed,
//                  tolerance, format, probe_degree, max_products)
//   [polys]        one polynomial per line
//   [valuation]    a FORMS or DIAGONAL block (see write_valuation)
//   [vectors]      one vector per line, entries separated by ','
//
// '#' starts a comment. Errors carry the line number.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "valvol/divisor.hpp"
#include "valvol/valspace.hpp"

namespace valvol {

struct ExperimentConfig {
  Variety variety = Variety::projective(1);
  std::vector<DivisorTerm> divisor;
  std::vector<Condition> conditions;
  std::vector<int> m_range;
  int n_max = 12;
  std::vector<int> schedule{1, 2, 4, 6, 12};
  std::size_t max_products = 20000;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  Rational tolerance = 0;
  std::string format = "csv";
  int probe_degree = 2;
  std::vector<HPoly> polys;
  std::optional<std::variant<MinFormsVal, DiagonalVal>> valuation;
  std::vector<Vec> vectors;

  TruncationBudget budget() const;
  SamplingPlan sampling() const;
  /// Throws InputError when the config has no divisor. On a hypersurface,
  /// terms divisible by g are dropped.
  Divisor make_divisor() const;
};

/// Throws InputError ("line N: ...") on malformed input.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Valuation text blocks:
///   FORMS dim            DIAGONAL dim
///   a, b, ... ; shift    b_0, b_1, ... ; shift   (one basis vector per line)
///   END                  END
std::string write_valuation(const MinFormsVal& u);
std::string write_valuation(const DiagonalVal& u);
std::variant<MinFormsVal, DiagonalVal> parse_valuation(std::string_view text);

/// "1..24", "2, 4, 6" or a mix "1..4, 8".
std::vector<int> parse_range(std::string_view text);

}  // namespace valvol
