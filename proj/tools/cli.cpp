#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "valvol/chow.hpp"
#include "valvol/config.hpp"
#include "valvol/errors.hpp"
#include "valvol/harness.hpp"
#include "valvol/selftest.hpp"

namespace valvol::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<int> budget;
  std::string tolerance;
};

struct Output {
  std::string text;
  int code = 0;
};

ExperimentConfig load(const Options& o) {
  if (o.config.empty()) throw InputError("--config is required");
  ExperimentConfig cfg = load_config(o.config);
  if (!o.format.empty()) cfg.format = o.format;
  if (o.seed) cfg.seed = *o.seed;
  if (o.budget) cfg.n_max = *o.budget;
  if (!o.tolerance.empty()) {
    cfg.tolerance = parse_rational(o.tolerance);
    if (cfg.tolerance < 0) throw InputError("--tolerance must be nonnegative");
  }
  return cfg;
}

std::string vec_text(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i].str();
  return s;
}

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& e : v) a.push_back(e.str());
  return a;
}

Output cmd_orthogonalize(const ExperimentConfig& cfg) {
  if (!cfg.valuation) throw InputError("orthogonalize needs a [valuation] section");
  Orthogonalization o;
  if (auto* f = std::get_if<MinFormsVal>(&*cfg.valuation)) {
    try {
      o = orthogonalize(*f);
    } catch (const NonReducedError& e) {
      throw InputError(std::string(e.what()) + "; kernel vector (" + vec_text(e.witness()) + ")");
    }
  } else {
    const auto& d = std::get<DiagonalVal>(*cfg.valuation);
    o = Orthogonalization{d, d.basis(), 0};
  }
  std::ostringstream os;
  if (cfg.format == "json") {
    ordered_json j;
    ordered_json basis = ordered_json::array(), shifts = ordered_json::array();
    for (std::size_t i = 0; i < o.diag.dim(); ++i) {
      basis.push_back(vec_json(o.diag.basis_vector(i)));
      shifts.push_back(o.diag.shifts()[i].str());
    }
    j["basis"] = basis;
    j["shifts"] = shifts;
    j["slack"] = to_string(o.slack);
    j["block"] = write_valuation(o.diag);
    os << j.dump(2) << "\n";
  } else {
    os << "index,shift,basis_vector\r\n";
    for (std::size_t i = 0; i < o.diag.dim(); ++i)
      os << i << ',' << o.diag.shifts()[i] << ',' << csv_field(vec_text(o.diag.basis_vector(i))) << "\r\n";
  }
  return {os.str(), 0};
}

Output cmd_volume(const ExperimentConfig& cfg) {
  std::ostringstream os;
  if (cfg.valuation) {
    DiagonalVal d = std::holds_alternative<DiagonalVal>(*cfg.valuation)
                        ? std::get<DiagonalVal>(*cfg.valuation)
                        : orthogonalize(std::get<MinFormsVal>(*cfg.valuation)).diag;
    std::vector<Vec> x = cfg.vectors;
    if (x.empty())
      for (std::size_t i = 0; i < d.dim(); ++i) x.push_back(unit_vector(d.dim(), i));
    Value v = volume(d, x);
    if (cfg.format == "json") {
      os << ordered_json{{"volume", v.str()}}.dump(2) << "\n";
    } else {
      os << "volume\r\n" << v << "\r\n";
    }
    return {os.str(), 0};
  }
  if (cfg.m_range.empty()) throw InputError("volume needs [valuation] or a divisor with an m range");
  const Divisor eta = cfg.make_divisor();
  const Variety& W = cfg.variety;
  const Divisor theta = W.is_projective_space() ? eta : Divisor(Variety::projective(W.n), cfg.divisor);
  VolumeOptions opt{cfg.budget(), cfg.sampling()};
  struct Row {
    int m;
    std::size_t dim = 0;
    VolumeResult v;
    std::string error;
  };
  std::vector<Row> rows(cfg.m_range.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i].m = cfg.m_range[i];
    try {
      rows[i].dim = W.graded_dim(rows[i].m);
      rows[i].v = W.is_projective_space() ? pn_volume(eta, rows[i].m, opt)
                                          : hypersurface_volume(theta, *W.g, rows[i].m, opt);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  int code = 0;
  ordered_json arr = ordered_json::array();
  if (cfg.format != "json") os << "m,dim,vol_lo,vol_hi,exact\r\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) code = 1;
    if (cfg.format == "json") {
      ordered_json j{{"m", r.m}};
      if (r.error.empty()) {
        j["dim"] = r.dim;
        j["vol_lo"] = r.v.lo.str();
        j["vol_hi"] = r.v.hi.str();
        j["exact"] = r.v.exact;
      } else {
        j["error"] = r.error;
      }
      arr.push_back(j);
    } else if (r.error.empty()) {
      os << r.m << ',' << r.dim << ',' << r.v.lo << ',' << r.v.hi << ',' << (r.v.exact ? "true" : "false") << "\r\n";
    } else {
      os << r.m << ",,,," << csv_field("error: " + r.error) << "\r\n";
    }
  }
  if (cfg.format == "json") os << arr.dump(2) << "\n";
  return {os.str(), code};
}

Output cmd_dual(const ExperimentConfig& cfg) {
  const Divisor eta = cfg.make_divisor();
  if (cfg.polys.empty()) throw InputError("dual needs a [polys] section");
  SubvalEngine lower(eta.dual_conditions(), cfg.budget());
  const auto points = sample_points(eta, cfg.sampling());
  struct Row {
    SandwichResult r;
    std::string error;
  };
  std::vector<Row> rows(cfg.polys.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    try {
      rows[i].r = dual_sandwich(eta, lower, cfg.polys[i], points);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  std::ostringstream os;
  int code = 0;
  ordered_json arr = ordered_json::array();
  if (cfg.format != "json") os << "poly,lower,upper,n_used,points\r\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.error.empty()) code = 1;
    if (cfg.format == "json") {
      ordered_json j{{"poly", cfg.polys[i].str()}};
      if (r.error.empty()) {
        j["lower"] = r.r.lower.str();
        j["upper"] = r.r.upper.str();
        j["budget"] = {{"n_max", cfg.n_max}, {"n_used", r.r.n_used}, {"points", r.r.points}};
      } else {
        j["error"] = r.error;
      }
      arr.push_back(j);
    } else if (r.error.empty()) {
      os << csv_field(cfg.polys[i].str()) << ',' << r.r.lower << ',' << r.r.upper << ',' << r.r.n_used << ','
         << r.r.points << "\r\n";
    } else {
      os << csv_field(cfg.polys[i].str()) << ",,,," << csv_field("error: " + r.error) << "\r\n";
    }
  }
  if (cfg.format == "json") os << arr.dump(2) << "\n";
  return {os.str(), code};
}

Output cmd_intersect(const ExperimentConfig& cfg) {
  const Divisor eta = cfg.make_divisor();
  const Variety& W = cfg.variety;
  const Divisor theta = W.is_projective_space() ? eta : Divisor(Variety::projective(W.n), cfg.divisor);
  IntersectionResult r = intersection_number(theta, W, cfg.seed);
  std::ostringstream os;
  if (cfg.format == "json") {
    os << ordered_json{{"value", r.value.str()},
                       {"normalization", to_string(r.normalization)},
                       {"seed", r.seed},
                       {"stable", r.stable}}
              .dump(2)
       << "\n";
  } else {
    os << "value,normalization,seed,stable\r\n"
       << r.value << ',' << r.normalization << ',' << r.seed << ',' << (r.stable ? "true" : "false") << "\r\n";
  }
  return {os.str(), r.stable ? 0 : 1};
}

Output cmd_verify(const ExperimentConfig& cfg) {
  if (cfg.m_range.empty()) throw InputError("verify-main needs m in [experiment]");
  MainReport rep = verify_main(cfg);
  return {cfg.format == "json" ? table_json(rep) : table_csv(rep), rep.violation || rep.failure ? 1 : 0};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valued vector spaces, sub-valuation duality and volume/intersection tables"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 0;
  int budget = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Experiment config file");
    sub->add_option("--out", o.out, "Write output here instead of stdout");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "Random seed (overrides the config)");
    sub->add_option("--budget", budget, "Largest power n in the recovery formula")->check(CLI::Range(1, 1000));
    sub->add_option("--tolerance", o.tolerance, "Allowed negative slack, a rational");
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"orthogonalize", "volume", "dual", "intersect", "verify-main", "selftest"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    subs.emplace_back(name, sub);
  }
  subs[0].second->description("Diagonalize a FORMS valuation");
  subs[1].second->description("Volume of a valuation, or the volume table of a divisor");
  subs[2].second->description("Lower and upper bounds for the dual of a divisor");
  subs[3].second->description("Intersection number of a divisor with the variety");
  subs[4].second->description("Volume/intersection inequality table");
  subs[5].second->description("Run the randomized invariant suites");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  for (auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--budget")) o.budget = budget;
    try {
      Output res;
      if (name == "selftest") {
        std::ostringstream os;
        bool ok = run_selftest(os, o.seed.value_or(0));
        res = {os.str(), ok ? 0 : 1};
      } else {
        ExperimentConfig cfg = load(o);
        if (name == "orthogonalize") res = cmd_orthogonalize(cfg);
        if (name == "volume") res = cmd_volume(cfg);
        if (name == "dual") res = cmd_dual(cfg);
        if (name == "intersect") res = cmd_intersect(cfg);
        if (name == "verify-main") res = cmd_verify(cfg);
      }
      if (o.out.empty()) {
        out << res.text;
      } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw InputError("cannot write " + o.out);
        f << res.text;
      }
      return res.code;
    } catch (const InputError& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    } catch (const DomainError& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    } catch (const DimensionError& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    } catch (const ScaleError& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace valvol::cli
