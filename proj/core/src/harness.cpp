#include "valvol/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "valvol/errors.hpp"

namespace valvol {

unsigned thread_count() {
  if (const char* env = std::getenv("VALVOL_THREADS")) {
    char* end = nullptr;
    long k = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && k > 0) return static_cast<unsigned>(std::min(k, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int degree_cap(const Variety& W) {
  if (W.is_projective_space()) {
    switch (W.n) {
      case 1: return 24;
      case 2: return 12;
      case 3: return 6;
      default: return 0;
    }
  }
  switch (W.n) {
    case 2: return 10;
    case 3: return 5;
    default: return 0;
  }
}

namespace {

void check_degree(const Variety& W, int m) {
  if (m < 1) throw DomainError("degree m must be positive");
  const int cap = degree_cap(W);
  if (m > cap)
    throw ScaleError("degree " + std::to_string(m) + " exceeds the limit " + std::to_string(cap) + " for " + W.str());
}

Value standard_volume(const DiagonalVal& u) {
  Value total = Value(0) - u.basis_det_val();
  for (const auto& c : u.shifts()) total = total + c;
  return total;
}

Value sampled_upper_volume(const Divisor& eta, int m, const SamplingPlan& plan) {
  MonomialIndex idx(eta.n(), m);
  const std::size_t dim = idx.size();
  std::vector<Vec> forms;
  std::vector<Value> shifts;
  const std::size_t cap = 2 * dim + 32;
  for (const auto& xi : sample_points(eta, plan)) {
    if (forms.size() >= cap) break;
    Value e;
    try {
      e = divisor_eval(eta, xi);
    } catch (const DomainError&) {
      continue;
    }
    Value vx = vtilde(xi.coords());
    Vec row(dim);
    for (std::size_t k = 0; k < dim; ++k) row[k] = HPoly::monomial(idx[k]).eval(xi.coords());
    forms.push_back(std::move(row));
    shifts.push_back(Value(-(Rational(m) * (vx.rational() + e.rational()))));
  }
  if (forms.empty()) return Value::inf();
  try {
    auto o = orthogonalize(MinFormsVal(dim, std::move(forms), std::move(shifts), eta.ctx()));
    return standard_volume(o.diag);
  } catch (const NonReducedError&) {
    return Value::inf();
  }
}

}  // namespace

VolumeResult pn_volume(const Divisor& eta, int m, const VolumeOptions& opt) {
  if (!eta.variety().is_projective_space()) throw DomainError("pn_volume needs a divisor on P^n");
  check_degree(eta.variety(), m);
  if (auto c = eta.toric_shifts(); c) {
    const Value a = *std::max_element(c->begin(), c->end());
    std::vector<Value> cn;
    for (const auto& x : *c) cn.push_back(x - a);
    Value total = Value(0);
    std::size_t dim = 0;
    for (const auto& e : monomial_exponents(eta.n(), m)) {
      total = total + toric_dual(cn, e);
      ++dim;
    }
    // (eta' + a)*_m = eta'*_m - m a on each of the dim basis vectors.
    total = Value(total.rational() - Rational(m) * Rational(dim) * a.rational());
    return VolumeResult{total, total, true};
  }
  SubvalEngine engine(eta.dual_conditions(), opt.budget);
  Value lo = standard_volume(engine.graded_piece(m));
  Value hi = sampled_upper_volume(eta, m, opt.sampling);
  if (hi < lo) throw Error("pn_volume: sampled upper bound below the generated lower bound");
  return VolumeResult{lo, hi, lo == hi};
}

HypersurfaceBasis hypersurface_basis(const HPoly& g, int m) {
  if (g.is_zero() || g.degree() < 1) throw DomainError("hypersurface equation must be nonconstant");
  const int D = g.degree();
  if (m < D) throw DomainError("hypersurface_basis needs m >= deg g");
  const std::size_t n = g.nvars() - 1;
  HypersurfaceBasis out;
  out.g_monic = g.scaled(g.leading_coeff().inv());
  const Exponent& lead = out.g_monic.leading_exponent();
  MonomialIndex idx(n, m);
  std::vector<Vec> cols;
  for (const auto& mono : monomial_basis(n, m - D)) cols.push_back(idx.coords(mono * out.g_monic));
  for (const auto& e : idx.exponents()) {
    bool divisible = true;
    for (std::size_t i = 0; i < e.size(); ++i) divisible = divisible && e[i] >= lead[i];
    if (divisible) continue;
    out.monomials.push_back(e);
    cols.push_back(idx.coords(HPoly::monomial(e)));
  }
  out.certificate = determinant(Matrix::from_columns(cols, idx.size()));
  return out;
}

VolumeResult hypersurface_volume(const Divisor& theta, const HPoly& g, int m, const VolumeOptions& opt) {
  if (!theta.variety().is_projective_space()) throw DomainError("hypersurface_volume needs theta on the ambient P^n");
  Variety W = Variety::hypersurface(theta.n(), g);
  check_degree(W, m);
  SubvalEngine engine(theta.dual_conditions(), opt.budget);
  DiagonalVal piece = engine.graded_piece(m);
  const Value full = standard_volume(piece);
  Value vol = full;
  if (m >= g.degree()) {
    MonomialIndex idx(theta.n(), m);
    std::vector<Vec> F;
    for (const auto& mono : monomial_basis(theta.n(), m - g.degree())) F.push_back(idx.coords(mono * g));
    if (F.size() < idx.size()) {
      AdaptedBasis ab = adapted_basis(piece, F);
      std::vector<Vec> unit;
      for (std::size_t i = 0; i < F.size(); ++i) unit.push_back(unit_vector(F.size(), i));
      vol = full - volume(ab.sub, unit);
    } else {
      throw DomainError("hypersurface_volume: K[W]_m is zero");
    }
  }
  const bool coordinate = g.is_monomial() && g.degree() == 1;
  const bool exact = theta.is_toric() && coordinate;
  return VolumeResult{vol, exact ? vol : Value::inf(), exact};
}

MainReport verify_main(const ExperimentConfig& cfg) {
  MainReport rep;
  const Divisor eta = cfg.make_divisor();
  const Variety& W = cfg.variety;
  // On a hypersurface the divisor terms are ambient representatives.
  const Divisor theta = W.is_projective_space() ? eta : Divisor(Variety::projective(W.n), cfg.divisor);
  rep.intersection = intersection_number(theta, W, cfg.seed);
  rep.rhs = Value(-(rep.intersection.value.rational() / Rational(static_cast<long>(W.dim() + 1))));

  VolumeOptions opt{cfg.budget(), cfg.sampling()};
  rep.rows.resize(cfg.m_range.size());
  parallel_for(cfg.m_range.size(), [&](std::size_t i) {
    TableRow& row = rep.rows[i];
    row.m = cfg.m_range[i];
    try {
      if (!rep.intersection.stable) throw Error("intersection number is not stable under reseeding");
      row.dim = W.graded_dim(row.m);
      VolumeResult v = W.is_projective_space() ? pn_volume(eta, row.m, opt)
                                               : hypersurface_volume(theta, *W.g, row.m, opt);
      const Rational scale = Rational(row.m) * Rational(static_cast<long>(row.dim));
      row.vol_lo = v.lo;
      row.vol_hi = v.hi;
      row.lhs_lo = v.lo / scale;
      row.lhs_hi = v.hi.is_inf() ? Value::inf() : v.hi / scale;
      row.rhs = rep.rhs;
      row.slack_lo = row.lhs_lo - row.rhs;
      row.kind = v.exact ? "exact" : (v.hi.is_inf() ? "lower" : "interval");
      row.pass = row.slack_lo.rational() >= -cfg.tolerance;
      if (!row.pass) row.diagnostic = "slack below tolerance";
    } catch (const std::exception& e) {
      row.kind = "error";
      row.diagnostic = e.what();
      row.pass = false;
    }
  });
  for (const auto& row : rep.rows) {
    if (row.kind == "error") {
      rep.failure = true;
    } else if (!row.pass) {
      rep.violation = true;
    }
  }
  return rep;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string table_csv(const MainReport& r) {
  std::ostringstream os;
  os << "m,dim,vol_lo,vol_hi,lhs_lo,lhs_hi,rhs,slack_lo,status\r\n";
  for (const auto& row : r.rows) {
    os << row.m << ',';
    if (row.kind == "error") {
      os << ",,,,,,," << csv_field("error: " + row.diagnostic) << "\r\n";
      continue;
    }
    os << row.dim << ',' << row.vol_lo << ',' << row.vol_hi << ',' << row.lhs_lo << ',' << row.lhs_hi << ','
       << row.rhs << ',' << row.slack_lo << ',' << csv_field(row.kind + (row.pass ? "" : "; " + row.diagnostic))
       << "\r\n";
  }
  return os.str();
}

std::string table_json(const MainReport& r) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["intersection"] = {{"value", r.intersection.value.str()},
                         {"normalization", to_string(r.intersection.normalization)},
                         {"seed", r.intersection.seed},
                         {"stable", r.intersection.stable}};
  out["rhs"] = r.rhs.str();
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json j;
    j["m"] = row.m;
    j["status"] = row.kind;
    if (row.kind != "error") {
      j["dim"] = row.dim;
      j["vol_lo"] = row.vol_lo.str();
      j["vol_hi"] = row.vol_hi.str();
      j["lhs_lo"] = row.lhs_lo.str();
      j["lhs_hi"] = row.lhs_hi.str();
      j["rhs"] = row.rhs.str();
      j["slack_lo"] = row.slack_lo.str();
      j["pass"] = row.pass;
    }
    if (!row.diagnostic.empty()) j["diagnostic"] = row.diagnostic;
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  out["violation"] = r.violation;
  out["failure"] = r.failure;
  return out.dump(2) + "\n";
}

}  // namespace valvol
