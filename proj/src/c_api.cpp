#include "lazardlab.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <new>
#include <numeric>
#include <random>

#include "json.hpp"
#include "lazardlab/comparison.hpp"
#include "lazardlab/error.hpp"
#include "lazardlab/mahler.hpp"
#include "lazardlab/pairing.hpp"

using namespace lazard;
using json = nlohmann::ordered_json;
using padic::i64;

struct lazard_group {
  group::GroupModel model;
};

namespace {

thread_local std::string g_last_error;

template <class F>
lazard_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LAZARD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<lazard_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return LAZARD_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LAZARD_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LAZARD_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) { *out = dup(j.dump(2) + "\n"); }

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string("null ") + what);
}

struct Options {
  std::string rep = "trivial";
  std::string method = "koszul";
  std::vector<std::string> routes{"koszul", "ce"};
  bool timing = false;
  cmp::RouteOptions route;
};

Options parse_options(const char* text) {
  Options o;
  if (!text || !*text) return o;
  const json j = json::parse(text);
  if (!j.is_object()) fail(ErrorCode::Parse, "options must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "rep") o.rep = v.get<std::string>();
    else if (k == "method") o.method = v.get<std::string>();
    else if (k == "routes") o.routes = v.get<std::vector<std::string>>();
    else if (k == "timing") o.timing = v.get<bool>();
    else if (k == "N") o.route.N = v.get<int>();
    else if (k == "D") o.route.D = v.get<int>();
    else if (k == "max_degree") o.route.max_degree = v.get<int>();
    else if (k == "n_max") o.route.n_max = v.get<int>();
    else if (k == "lookahead") o.route.lookahead = v.get<int>();
    else if (k == "mem_cap_mb") o.route.mem_cap_bytes = v.get<std::size_t>() << 20;
    else if (k == "cache_dir") o.route.cache_dir = v.get<std::string>();
    else fail(ErrorCode::Parse, "options: unknown field '" + k + "'");
  }
  if (o.route.N < 2) fail(ErrorCode::InvalidArgument, "N must be at least 2");
  if (o.route.D < 1) fail(ErrorCode::InvalidArgument, "D must be positive");
  return o;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

cx::CohomologyReport run_method(const group::GroupModel& G, const Options& o) {
  const auto rho = cmp::make_representation(G, o.rep, o.route.N);
  if (o.method == "koszul") return cmp::koszul_route(G, rho, o.route);
  if (o.method == "ce") return cmp::ce_route(G, rho, o.route);
  if (o.method == "bar") return cmp::bar_route(G, rho, o.route);
  fail(ErrorCode::Parse, "unknown method '" + o.method + "' (koszul, bar, ce)");
}

}  // namespace

extern "C" {

const char* lazard_status_name(lazard_status s) {
  if (s == LAZARD_OK) return "Ok";
  if (s == LAZARD_OUT_OF_MEMORY) return "OutOfMemory";
  if (s >= LAZARD_INVALID_ARGUMENT && s <= LAZARD_INTERNAL) return error_code_name(static_cast<ErrorCode>(s));
  return "Unknown";
}

const char* lazard_last_error(void) { return g_last_error.c_str(); }

int lazard_exit_code(lazard_status s) {
  switch (s) {
    case LAZARD_OK:
      return 0;
    case LAZARD_INVALID_ARGUMENT:
    case LAZARD_UNSUPPORTED_PRIME:
    case LAZARD_MISSING_SAMPLE:
    case LAZARD_TENSOR_MISSING:
    case LAZARD_PARSE:
      return 2;
    case LAZARD_RESOURCE_CAP:
    case LAZARD_OUT_OF_MEMORY:
      return 3;
    default:
      return 1;
  }
}

void lazard_string_free(char* s) { std::free(s); }

lazard_status lazard_group_builtin(const char* name, int64_t p, int d, int n, int precision, lazard_group** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = new lazard_group{group::builtin_group(name, p, d, n, precision)};
  });
}

lazard_status lazard_group_from_json(const char* text, lazard_group** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new lazard_group{group::group_from_spec_json(text)};
  });
}

void lazard_group_free(lazard_group* g) { delete g; }

lazard_status lazard_group_info(const lazard_group* g, char** out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    const auto& G = g->model;
    emit({{"name", G.name()}, {"kind", group::kind_name(G.kind())}, {"hash", G.hash()}, {"p", G.p()},
          {"d", G.d()}, {"level", G.level()}, {"N", G.N()}},
         out);
  });
}

lazard_status lazard_group_validate(const lazard_group* g, int samples, int m, uint64_t seed, char** out,
                                    int* pass) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    const auto& G = g->model;
    if (samples < 1) fail(ErrorCode::InvalidArgument, "samples must be positive");
    if (m < 1 || m > G.N()) fail(ErrorCode::InvalidArgument, "m must lie in [1, N]");
    const auto r = group::validate_group(G, samples, m, seed);
    json axioms = json::array();
    for (const auto& a : r.axioms) axioms.push_back({{"axiom", a.axiom}, {"pass", a.pass}, {"witness", a.witness}});
    json j = {{"command", "group-validate"},
              {"params", {{"group", G.name()}, {"group_hash", G.hash()}, {"p", G.p()}, {"d", G.d()},
                          {"m", m}, {"samples", samples}, {"seed", seed}}},
              {"axioms", axioms},
              {"pass", r.all_pass()}};
    if (pass) *pass = r.all_pass();
    emit(j, out);
  });
}

lazard_status lazard_cohomology(const lazard_group* g, const char* options, char** out, int* pass) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    const auto o = parse_options(options);
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = run_method(g->model, o);
    if (o.timing) rep.timing_ms = elapsed_ms(t0);
    if (pass) *pass = rep.d2_zero;
    emit(rep.to_json(), out);
  });
}

lazard_status lazard_compare(const lazard_group* g, const char* options, char** out, int* match) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    const auto o = parse_options(options);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rho = cmp::make_representation(g->model, o.rep, o.route.N);
    const auto v = cmp::lazard_compare(g->model, rho, o.route, o.routes);
    json j = v.to_json();
    if (o.timing) j["timing_ms"] = elapsed_ms(t0);
    if (match) *match = v.verdict;
    emit(j, out);
  });
}

lazard_status lazard_duality(const lazard_group* g, const char* options, char** out, int* pass) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    auto o = parse_options(options);
    o.route.max_degree = -1;
    const auto& G = g->model;
    const auto c = group::lie_bracket(G);
    const auto cert = cmp::unimodular_certificate(c);
    auto rep = cmp::koszul_route(G, cmp::make_representation(G, o.rep, o.route.N), o.route);
    const auto e = cmp::euler_check(rep);
    const auto d = cmp::duality_check(rep, G.d(), c);
    json j = {{"command", "duality"},
              {"params", rep.params},
              {"unimodular_certificate", cert},
              {"euler", e.to_json()},
              {"duality", d.to_json()},
              {"report", rep.to_json()},
              {"pass", e.pass && d.pass && rep.d2_zero}};
    if (pass) *pass = e.pass && d.pass && rep.d2_zero;
    emit(j, out);
  });
}

lazard_status lazard_amice(const char* samples, int64_t h_num, int64_t h_den, char** out, int* verdict) {
  return guard([&] {
    need(samples, "samples");
    need(out, "out");
    const auto f = mahler::samples_from_json(samples);
    const auto h = gauge::Radius::of(f.ring.p(), h_num, h_den);
    const auto c = mahler::mahler_expand(f);
    const auto prof = mahler::amice_profile(c, h);
    json t = json::array();
    for (std::size_t k = 0; k < c.index.size(); ++k)
      t.push_back({{"alpha", c.index[k]},
                   {"c", c.c[k]},
                   {"t", gauge::to_string(prof.t[k], h)},
                   {"lower_bound", static_cast<bool>(prof.lower_bound[k])}});
    json shells = json::array();
    for (const auto& v : prof.shell_min) shells.push_back(gauge::to_string(v, h));
    json j = {{"command", "amice"},
              {"params", {{"p", f.ring.p()}, {"d", f.d}, {"D", f.D}, {"N", f.ring.N()}, {"h", h.str()}}},
              {"verdict", mahler::verdict_name(prof.verdict)},
              {"early_min", gauge::to_string(prof.early_min, h)},
              {"late_min", gauge::to_string(prof.late_min, h)},
              {"shell_min", shells},
              {"profile", t}};
    if (verdict) *verdict = static_cast<int>(prof.verdict);
    emit(j, out);
  });
}

lazard_status lazard_duality_demo(int64_t p, int N, int D, uint64_t seed, char** out, int* pass) {
  return guard([&] {
    need(out, "out");
    if (D < 0 || D > 512) fail(ErrorCode::InvalidArgument, "D must lie in [0, 512]");
    const padic::Ring R(p, N);
    using pairing::TruncatedTate;
    const int w = std::max(D, 3);
    const auto r1 = pairing::residue_pair(TruncatedTate::monomial(R, w, -3), TruncatedTate::monomial(R, w, 2));
    const auto r2 = pairing::residue_pair(TruncatedTate::monomial(R, w, -1), TruncatedTate::monomial(R, w, 1));

    bool gram = true;
    for (int k = 0; k <= D; ++k)
      gram = gram && pairing::gram_matrix(R, k) == padic::PNMatrix::identity(R, static_cast<std::size_t>(k) + 1);

    std::vector<int> perm(static_cast<std::size_t>(D) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto P = pairing::gram_matrix(R, D, perm);
    bool permuted = true;
    for (std::size_t n = 0; n < perm.size(); ++n)
      for (std::size_t m = 0; m < perm.size(); ++m)
        permuted = permuted && P(n, m) == (static_cast<int>(n) == perm[m] ? 1 : 0);

    const std::size_t W = static_cast<std::size_t>(D) + 1;
    std::vector<std::vector<i64>> ys(W, std::vector<i64>(W, 0));
    for (std::size_t j = 0; j < W; ++j) ys[j][j] = 1;
    bool delta = true;
    for (std::size_t i = 0; i < W; ++i)
      for (std::size_t j = 0; j < W; ++j)
        delta = delta && pairing::banach_smith_pair(R, {{i, 1}}, ys[j], W) == (i == j ? 1 : 0);
    const bool perfect = pairing::window_perfect(R, ys, W);
    for (auto& y : ys)
      for (auto& v : y) v = R.mul(R.reduce(p), v);
    const bool control = pairing::window_perfect(R, ys, W);

    const bool ok = r1 == 1 && r2 == 0 && gram && permuted && delta && perfect && !control;
    json j = {{"command", "duality-demo"},
              {"params", {{"p", p}, {"N", N}, {"D", D}, {"seed", seed}}},
              {"residue", json::array({{{"f", "T^-3"}, {"g", "T^2"}, {"value", r1}},
                                       {{"f", "T^-1"}, {"g", "T^1"}, {"value", r2}}})},
              {"gram_identity", gram},
              {"permutation", perm},
              {"gram_permutation", permuted},
              {"sequence_pairing_delta", delta},
              {"window_perfect", perfect},
              {"scaled_window_perfect", control},
              {"pass", ok}};
    if (pass) *pass = ok;
    emit(j, out);
  });
}

}  // extern "C"
