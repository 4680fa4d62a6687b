#include "valvol/config.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "valvol/errors.hpp"
#include "valvol/parse.hpp"

namespace valvol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto k = s.find(sep);
    out.push_back(trim(s.substr(0, k)));
    if (k == std::string_view::npos) return out;
    s.remove_prefix(k + 1);
  }
}

long parse_long(std::string_view s, long lo, long hi) {
  s = trim(s);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(std::string(s), &used);
  } catch (const std::exception&) {
    throw InputError("expected an integer, got \"" + std::string(s) + "\"");
  }
  if (used != s.size()) throw InputError("expected an integer, got \"" + std::string(s) + "\"");
  if (v < lo || v > hi)
    throw InputError("value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

[[noreturn]] void at_line(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

Vec parse_vector(std::string_view s) {
  Vec v;
  for (auto part : split(s, ',')) {
    if (part.empty()) throw InputError("empty vector entry");
    v.push_back(parse_field(part));
  }
  return v;
}

std::string vector_str(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s;
}

}  // namespace

std::vector<int> parse_range(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    if (part.empty()) throw InputError("empty entry in range");
    auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(static_cast<int>(parse_long(part, 0, 1000)));
    } else {
      int a = static_cast<int>(parse_long(part.substr(0, dots), 0, 1000));
      int b = static_cast<int>(parse_long(part.substr(dots + 2), 0, 1000));
      if (b < a) throw InputError("empty range " + std::string(part));
      for (int m = a; m <= b; ++m) out.push_back(m);
    }
  }
  return out;
}

TruncationBudget ExperimentConfig::budget() const {
  TruncationBudget b;
  b.schedule = schedule;
  b.n_max = n_max;
  b.max_products = max_products;
  return b;
}

SamplingPlan ExperimentConfig::sampling() const { return SamplingPlan{samples, seed, true}; }

Divisor ExperimentConfig::make_divisor() const {
  if (divisor.empty()) throw InputError("config has no [divisor] section");
  if (variety.is_projective_space()) return Divisor(variety, divisor);
  // Ambient terms divisible by g are +inf on W and drop out of the minimum.
  std::vector<DivisorTerm> on_w;
  for (const auto& t : divisor)
    if (!t.f.divide(*variety.g)) on_w.push_back(t);
  if (on_w.empty()) throw InputError("every divisor term vanishes on " + variety.str());
  return Divisor(variety, std::move(on_w));
}

std::string write_valuation(const MinFormsVal& u) {
  std::string s = "FORMS " + std::to_string(u.dim) + "\n";
  for (std::size_t j = 0; j < u.forms.size(); ++j) s += vector_str(u.forms[j]) + " ; " + u.shifts[j].str() + "\n";
  return s + "END\n";
}

std::string write_valuation(const DiagonalVal& u) {
  std::string s = "DIAGONAL " + std::to_string(u.dim()) + "\n";
  for (std::size_t i = 0; i < u.dim(); ++i) s += vector_str(u.basis_vector(i)) + " ; " + u.shifts()[i].str() + "\n";
  return s + "END\n";
}

namespace {

std::variant<MinFormsVal, DiagonalVal> parse_valuation_lines(const std::vector<std::pair<std::size_t, std::string>>& lines) {
  if (lines.empty()) throw InputError("empty valuation block");
  auto [hline, header] = lines.front();
  auto words = split(trim(header), ' ');
  if (words.size() != 2 || (words[0] != "FORMS" && words[0] != "DIAGONAL"))
    at_line(hline, "expected 'FORMS dim' or 'DIAGONAL dim'");
  std::size_t dim = 0;
  try {
    dim = static_cast<std::size_t>(parse_long(words[1], 1, 4096));
  } catch (const InputError& e) {
    at_line(hline, e.what());
  }
  std::vector<Vec> rows;
  std::vector<Value> shifts;
  bool ended = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto [ln, text] = lines[k];
    if (trim(text) == "END") {
      if (k + 1 != lines.size()) at_line(lines[k + 1].first, "content after END");
      ended = true;
      break;
    }
    auto parts = split(text, ';');
    if (parts.size() != 2) at_line(ln, "expected 'entries ; shift'");
    try {
      Vec v = parse_vector(parts[0]);
      if (v.size() != dim) at_line(ln, "expected " + std::to_string(dim) + " entries");
      rows.push_back(std::move(v));
      shifts.push_back(parse_value(parts[1]));
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("line ", 0) == 0) throw;
      at_line(ln, e.what());
    }
  }
  if (!ended) at_line(lines.back().first, "valuation block without END");
  try {
    if (words[0] == "FORMS") return MinFormsVal(dim, std::move(rows), std::move(shifts));
    if (rows.size() != dim) throw InputError("DIAGONAL needs exactly dim basis vectors");
    return DiagonalVal(Matrix::from_columns(rows, dim), std::move(shifts));
  } catch (const Error& e) {
    at_line(hline, e.what());
  }
}

}  // namespace

std::variant<MinFormsVal, DiagonalVal> parse_valuation(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t ln = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++ln;
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    if (!trim(line).empty()) lines.emplace_back(ln, std::string(trim(line)));
  }
  return parse_valuation_lines(lines);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  std::string kind = "projective";
  std::optional<long> n;
  std::optional<std::pair<std::size_t, std::string>> g_text;
  std::vector<std::pair<std::size_t, std::string>> divisor_lines, condition_lines, poly_lines, valuation_lines,
      vector_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto h = raw.find('#');
    if (h != std::string::npos) raw.resize(h);
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') at_line(ln, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const char* known[] = {"variety", "divisor", "conditions", "experiment", "polys", "valuation", "vectors"};
      bool ok = false;
      for (auto k : known) ok = ok || section == k;
      if (!ok) at_line(ln, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) at_line(ln, "content before the first section");
    if (section == "divisor") {
      divisor_lines.emplace_back(ln, std::string(line));
    } else if (section == "conditions") {
      condition_lines.emplace_back(ln, std::string(line));
    } else if (section == "polys") {
      poly_lines.emplace_back(ln, std::string(line));
    } else if (section == "valuation") {
      valuation_lines.emplace_back(ln, std::string(line));
    } else if (section == "vectors") {
      vector_lines.emplace_back(ln, std::string(line));
    } else {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) at_line(ln, "expected 'key = value'");
      std::string key(trim(line.substr(0, eq)));
      std::string_view val = trim(line.substr(eq + 1));
      try {
        if (section == "variety") {
          if (key == "kind") {
            kind = std::string(val);
            if (kind != "projective" && kind != "hypersurface") throw InputError("kind must be projective or hypersurface");
          } else if (key == "n") {
            n = parse_long(val, 1, 3);
          } else if (key == "g") {
            g_text = std::make_pair(ln, std::string(val));
          } else {
            throw InputError("unknown key '" + key + "'");
          }
        } else if (key == "m") {
          cfg.m_range = parse_range(val);
        } else if (key == "n_max") {
          cfg.n_max = static_cast<int>(parse_long(val, 1, 1000));
        } else if (key == "schedule") {
          cfg.schedule = parse_range(val);
          if (cfg.schedule.empty()) throw InputError("empty schedule");
          for (int k : cfg.schedule)
            if (k < 1) throw InputError("schedule entries must be positive");
        } else if (key == "samples") {
          cfg.samples = static_cast<std::size_t>(parse_long(val, 0, 100000));
        } else if (key == "seed") {
          cfg.seed = static_cast<std::uint64_t>(parse_long(val, 0, std::numeric_limits<long>::max()));
        } else if (key == "tolerance") {
          cfg.tolerance = parse_rational(val);
          if (cfg.tolerance < 0) throw InputError("tolerance must be nonnegative");
        } else if (key == "format") {
          cfg.format = std::string(val);
          if (cfg.format != "csv" && cfg.format != "json") throw InputError("format must be csv or json");
        } else if (key == "probe_degree") {
          cfg.probe_degree = static_cast<int>(parse_long(val, 1, 8));
        } else if (key == "max_products") {
          cfg.max_products = static_cast<std::size_t>(parse_long(val, 1, 10000000));
        } else {
          throw InputError("unknown key '" + key + "'");
        }
      } catch (const InputError& e) {
        at_line(ln, e.what());
      }
    }
  }

  if (!n) {
    // Infer n from the widest divisor line is fragile; require it when any
    // polynomial data is present.
    if (!divisor_lines.empty() || !condition_lines.empty() || !poly_lines.empty() || g_text)
      throw InputError("[variety] must set n");
    n = 1;
  }
  const std::size_t nv = static_cast<std::size_t>(*n) + 1;
  auto poly = [&](std::size_t line, std::string_view s) -> HPoly {
    try {
      return parse_hpoly(s, nv);
    } catch (const InputError& e) {
      at_line(line, e.what());
    }
  };
  if (kind == "hypersurface") {
    if (!g_text) throw InputError("hypersurface variety needs g");
    try {
      cfg.variety = Variety::hypersurface(static_cast<std::size_t>(*n), poly(g_text->first, g_text->second));
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      at_line(g_text->first, e.what());
    }
  } else {
    if (g_text) at_line(g_text->first, "g is only allowed for hypersurfaces");
    cfg.variety = Variety::projective(static_cast<std::size_t>(*n));
  }
  auto pairs = [&](const auto& lines, auto&& sink) {
    for (const auto& [l, s] : lines) {
      auto parts = split(s, ';');
      if (parts.size() != 2) at_line(l, "expected 'poly ; value'");
      HPoly f = poly(l, parts[0]);
      Value v;
      try {
        v = parse_value(parts[1]);
      } catch (const InputError& e) {
        at_line(l, e.what());
      }
      sink(l, std::move(f), v);
    }
  };
  pairs(divisor_lines, [&](std::size_t l, HPoly f, Value c) {
    if (c.is_inf()) at_line(l, "divisor shifts must be finite");
    cfg.divisor.push_back({std::move(f), c});
  });
  pairs(condition_lines, [&](std::size_t, HPoly f, Value c) { cfg.conditions.push_back({std::move(f), c}); });
  for (const auto& [l, s] : poly_lines) cfg.polys.push_back(poly(l, s));
  for (const auto& [l, s] : vector_lines) {
    try {
      cfg.vectors.push_back(parse_vector(s));
    } catch (const InputError& e) {
      at_line(l, e.what());
    }
  }
  if (!valuation_lines.empty()) cfg.valuation = parse_valuation_lines(valuation_lines);
  if (!cfg.divisor.empty()) {
    try {
      (void)cfg.make_divisor();
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      at_line(divisor_lines.front().first, e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace valvol
