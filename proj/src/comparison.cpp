#include "lazardlab/comparison.hpp"

#include <random>

#include "lazardlab/finite.hpp"

namespace lazard::cmp {

using padic::i64;
using padic::PNMatrix;
using padic::Ring;

namespace {

int headroom(i64 p, int prec, int want) {
  int e = prec + want;
  while (e > prec) {
    long double v = 1;
    for (int i = 0; i < e; ++i) v *= static_cast<long double>(p);
    if (v < 4.0e18L) break;
    --e;
  }
  return e;
}

// exp(X) over Z/p^prec for X = 0 mod p
PNMatrix exp_mod(const PNMatrix& X, int prec) {
  const i64 p = X.ring().p();
  const std::size_t k = X.rows();
  const int big_e = headroom(p, prec, 2 * prec + 4);
  Ring big(p, big_e), R(p, prec);
  PNMatrix Xb(big, k, k);
  for (std::size_t e = 0; e < k * k; ++e) Xb(e / k, e % k) = big.reduce(X.data()[e]);
  PNMatrix acc = PNMatrix::identity(R, k), power = PNMatrix::identity(big, k);
  i64 unit = 1;
  int vfact = 0;
  for (int j = 1; j - vfact < prec || j <= prec; ++j) {
    i64 t = j;
    while (t % p == 0) {
      t /= p;
      ++vfact;
    }
    unit = R.mul(unit, R.reduce(t));
    if (vfact >= big_e - prec) fail(ErrorCode::PrecisionExhausted, "exponential series needs more headroom");
    power = power * Xb;
    const i64 inv = R.inverse(unit);
    for (std::size_t e = 0; e < k * k; ++e) {
      const i64 v = R.mul(R.reduce(power.data()[e] / big.pow(vfact)), inv);
      acc(e / k, e % k) = R.add(acc(e / k, e % k), v);
    }
  }
  return acc;
}

PNMatrix mat_pow(PNMatrix base, i64 e) {
  PNMatrix out = PNMatrix::identity(base.ring(), base.rows());
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

nlohmann::ordered_json base_params(const group::GroupModel& G, const dist::Representation& rho) {
  return {{"group", G.name()}, {"group_hash", G.hash()}, {"p", G.p()}, {"d", G.d()}, {"rep", rho.name}};
}

}  // namespace

dist::Representation make_representation(const group::GroupModel& G, const std::string& spec, int N) {
  if (spec == "trivial") {
    auto r = dist::Representation::trivial(G.p(), G.d(), N);
    r.name = "trivial";
    return r;
  }
  if (spec.rfind("mod:", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(spec.substr(4));
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad representation '" + spec + "'");
    }
    if (m < 1) fail(ErrorCode::InvalidArgument, "mod:m needs m >= 1");
    auto r = dist::Representation::trivial(G.p(), G.d(), m);
    r.name = spec;
    return r;
  }
  if (spec == "standard") return dist::Representation::standard(G, N);
  if (spec == "adjoint") {
    const auto c = group::lie_bracket(G);
    const int prec = std::min(N, c.precision);
    Ring R(G.p(), prec);
    dist::Representation r;
    r.name = "adjoint";
    r.ring = R;
    r.rank = static_cast<std::size_t>(G.d());
    for (int i = 0; i < G.d(); ++i) {
      PNMatrix ad(R, r.rank, r.rank);
      for (int j = 0; j < G.d(); ++j)
        for (int k = 0; k < G.d(); ++k)
          ad(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = R.reduce(c.at(i, j, k));
      r.images.push_back(exp_mod(ad, prec));
    }
    return r;
  }
  fail(ErrorCode::Parse, "unknown representation '" + spec + "' (trivial, standard, adjoint, mod:<m>)");
}

bool finite_exponent(const dist::Representation& rho) { return rho.name.rfind("mod:", 0) == 0; }

RepCheck check_representation(const group::GroupModel& G, const dist::Representation& rho, int samples,
                              std::uint64_t seed) {
  const Ring& R = rho.ring;
  std::mt19937_64 rng(seed);
  auto word = [&](const group::Coords& x) {
    PNMatrix out = PNMatrix::identity(R, rho.rank);
    for (std::size_t i = 0; i < x.size(); ++i) out = out * mat_pow(rho.images[i], R.reduce(x[i]));
    return out;
  };
  for (const auto& g : rho.images)
    for (std::size_t a = 0; a < g.rows(); ++a)
      for (std::size_t b = 0; b < g.cols(); ++b)
        if ((g(a, b) - (a == b ? 1 : 0)) % R.p() != 0) return {false, "rho(g) is not 1 mod p"};
  for (int s = 0; s < samples; ++s) {
    group::Coords x(static_cast<std::size_t>(G.d())), y(static_cast<std::size_t>(G.d()));
    for (auto& v : x) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(R.modulus()));
    for (auto& v : y) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(R.modulus()));
    if (!(word(x) * word(y) == word(G.multiply(x, y, R.N())))) {
      std::string w = "x=(";
      for (std::size_t i = 0; i < x.size(); ++i) w += (i ? "," : "") + std::to_string(x[i]);
      w += ") y=(";
      for (std::size_t i = 0; i < y.size(); ++i) w += (i ? "," : "") + std::to_string(y[i]);
      return {false, w + ")"};
    }
  }
  return {};
}

CohomologyReport koszul_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o) {
  auto alg = dist::Algebra::build(G, o.N, o.D, o.cache_dir);
  const auto P = cx::lazard_resolution(alg);
  auto rep = cx::cohomology(cx::hom_into_rep(P, rho), "koszul", o.max_degree);
  rep.d = G.d();
  rep.params = base_params(G, rho);
  rep.params["N"] = o.N;
  rep.params["D"] = o.D;
  rep.params["W"] = alg->W();
  rep.params["max_degree"] = o.max_degree;
  std::vector<int> it(P.iterations.begin() + (P.iterations.empty() ? 0 : 1), P.iterations.end());
  rep.extra["lifting"] = {{"rounds", it}, {"augmentation_compatible", P.augmentation_compatible()}};
  return rep;
}

CohomologyReport ce_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o) {
  const auto c = group::lie_bracket(G);
  const int prec = std::min({c.precision, rho.ring.N(), o.N});
  const auto action = cx::lie_action(rho, prec);
  auto rep = cx::cohomology(cx::ce_cochain(c, action, o.max_degree), "ce", o.max_degree);
  rep.d = G.d();
  rep.params = base_params(G, rho);
  rep.params["N"] = o.N;
  rep.params["bracket_precision"] = c.precision;
  rep.params["bracket_source"] = c.source;
  rep.params["max_degree"] = o.max_degree;
  return rep;
}

CohomologyReport bar_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o) {
  if (!finite_exponent(rho))
    fail(ErrorCode::InvalidArgument, "the bar route needs coefficients of finite exponent (mod:m)");
  const int top = o.max_degree < 0 ? 2 : std::min(o.max_degree, 2);
  const auto res = cx::inflation_colimit(G, rho, top, o.n_max, o.lookahead, o.mem_cap_bytes);
  CohomologyReport rep;
  rep.method = "bar";
  rep.N = rho.ring.N();
  rep.d = G.d();
  rep.degrees = res.H;
  rep.params = base_params(G, rho);
  rep.params["max_degree"] = top;
  rep.params["n_max"] = o.n_max;
  rep.params["lookahead"] = res.lookahead;
  rep.params["cochains"] = "cayley_graph";
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const auto& lv : res.levels) {
    nlohmann::ordered_json h = nlohmann::ordered_json::array(), img = nlohmann::ordered_json::array();
    for (const auto& m : lv.H) h.push_back(cx::invariants_json(m, rep.N));
    for (const auto& m : lv.image) img.push_back(cx::invariants_json(m, rep.N));
    levels.push_back({{"n", lv.n}, {"H", h}, {"image", img}});
  }
  rep.extra["colimit"] = {{"stabilized_at", res.stabilized_at}, {"levels", levels}};
  return rep;
}

nlohmann::ordered_json ComparisonVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = params;
  j["verdict"] = verdict ? "match" : "mismatch";
  j["match"] = match;
  j["compare_divisors"] = finite;
  auto& routes = j["routes"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) routes.push_back(r.to_json());
  return j;
}

ComparisonVerdict lazard_compare(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o,
                                 const std::vector<std::string>& routes) {
  if (routes.empty()) fail(ErrorCode::InvalidArgument, "no routes requested");
  ComparisonVerdict v;
  v.params = base_params(G, rho);
  v.params["N"] = o.N;
  v.params["D"] = o.D;
  v.params["max_degree"] = o.max_degree;
  v.params["routes"] = routes;
  v.finite = finite_exponent(rho);
  for (const auto& r : routes) {
    if (r == "koszul")
      v.reports.push_back(koszul_route(G, rho, o));
    else if (r == "ce")
      v.reports.push_back(ce_route(G, rho, o));
    else if (r == "bar")
      v.reports.push_back(bar_route(G, rho, o));
    else
      fail(ErrorCode::Parse, "unknown route '" + r + "' (koszul, ce, bar)");
  }
  std::size_t top = v.reports[0].degrees.size();
  for (const auto& r : v.reports) top = std::min(top, r.degrees.size());
  v.verdict = true;
  for (std::size_t i = 0; i < top; ++i) {
    bool ok = true;
    const auto& a = v.reports[0];
    for (const auto& b : v.reports) {
      ok = ok && a.degrees[i].full_rank_count == b.degrees[i].full_rank_count;
      // finite coefficients: routes over the same Z/p^m must agree exactly
      if (v.finite && a.N == b.N) ok = ok && a.degrees[i] == b.degrees[i];
    }
    v.match.push_back(ok);
    v.verdict = v.verdict && ok;
  }
  for (const auto& r : v.reports) v.verdict = v.verdict && r.d2_zero;
  return v;
}

nlohmann::ordered_json CheckVerdict::to_json() const { return {{"pass", pass}, {"detail", detail}}; }

std::vector<i64> unimodular_certificate(const group::LieBracketConstants& c) {
  Ring R(c.p, c.precision);
  std::vector<i64> tr;
  for (int i = 0; i < c.d; ++i) {
    i64 t = 0;
    for (int k = 0; k < c.d; ++k) t = R.add(t, R.reduce(c.at(i, k, k)));
    tr.push_back(t);
  }
  return tr;
}

CheckVerdict duality_check(const CohomologyReport& r, int d, const group::LieBracketConstants& c) {
  const auto tr = unimodular_certificate(c);
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (tr[i] != 0)
      fail(ErrorCode::NotUnimodular, "tr(ad e_" + std::to_string(i + 1) + ") = " + std::to_string(tr[i]) +
                                         " is nonzero; the modulus character is not verified trivial");
  if (static_cast<int>(r.degrees.size()) < d + 1)
    fail(ErrorCode::InvalidArgument, "duality needs degrees 0.." + std::to_string(d));
  CheckVerdict v;
  std::string ranks;
  for (int i = 0; i <= d; ++i) ranks += (i ? "," : "") + std::to_string(r.degrees[static_cast<std::size_t>(i)].full_rank_count);
  v.detail = "full ranks (" + ranks + ")";
  for (int i = 0; i <= d; ++i)
    if (r.degrees[static_cast<std::size_t>(i)].full_rank_count !=
        r.degrees[static_cast<std::size_t>(d - i)].full_rank_count) {
      v.pass = false;
      v.detail += "; H^" + std::to_string(i) + " and H^" + std::to_string(d - i) + " differ";
      break;
    }
  return v;
}

CheckVerdict euler_check(const CohomologyReport& r) {
  CheckVerdict v;
  const int e = r.euler();
  v.pass = e == 0;
  v.detail = "euler characteristic " + std::to_string(e);
  return v;
}

}  // namespace lazard::cmp
