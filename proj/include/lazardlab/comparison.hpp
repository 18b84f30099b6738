#pragma once

// Runs the independent cohomology routes on one (group, representation) and
// checks that they agree, plus the duality and Euler characteristic checks.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lazardlab/complexes.hpp"
#include "lazardlab/distribution.hpp"
#include "lazardlab/group.hpp"

namespace lazard::cmp {

using cx::CohomologyReport;

/// "trivial" (Z/p^N), "mod:m" (trivial on Z/p^m), "standard" (matrix models),
/// "adjoint" (exp(ad e_i) on the Lie algebra).
dist::Representation make_representation(const group::GroupModel& G, const std::string& spec, int N);
/// True for coefficient modules of finite exponent ("mod:m").
bool finite_exponent(const dist::Representation& rho);

struct RepCheck {
  bool pass = true;
  std::string witness;
};
/// rho_word(x) rho_word(y) = rho_word(psi(x, y)) on seeded samples.
RepCheck check_representation(const group::GroupModel& G, const dist::Representation& rho, int samples,
                              std::uint64_t seed);

struct RouteOptions {
  int N = 6;
  int D = 8;
  int max_degree = -1;  // -1: all degrees
  int n_max = 3;
  int lookahead = 0;    // 0: m
  std::size_t mem_cap_bytes = std::size_t(4) << 30;
  std::string cache_dir;
};

CohomologyReport koszul_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o);
CohomologyReport ce_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o);
/// Finite-level route: inflation colimit of the quotient cohomologies
/// (degrees <= 2, finite-exponent coefficients only).
CohomologyReport bar_route(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o);

struct ComparisonVerdict {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<CohomologyReport> reports;
  std::vector<bool> match;  // per degree
  bool finite = false;
  bool verdict = false;

  nlohmann::ordered_json to_json() const;
};

/// routes: any of "koszul", "ce", "bar".
ComparisonVerdict lazard_compare(const group::GroupModel& G, const dist::Representation& rho, const RouteOptions& o,
                                 const std::vector<std::string>& routes);

struct CheckVerdict {
  bool pass = true;
  std::string detail;
  nlohmann::ordered_json to_json() const;
};

/// tr(ad e_i) = sum_k c_ik^k for every i; all zero means the modulus
/// character is trivial.
std::vector<padic::i64> unimodular_certificate(const group::LieBracketConstants& c);
/// full_rank(H^i) = full_rank(H^{d-i}). Throws NotUnimodular when the
/// certificate is nonzero.
CheckVerdict duality_check(const CohomologyReport& r, int d, const group::LieBracketConstants& c);
/// sum (-1)^i full_rank(H^i) = 0.
CheckVerdict euler_check(const CohomologyReport& r);

}  // namespace lazard::cmp
