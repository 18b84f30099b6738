// lazard-lab command-line front end; talks to the core through the C API only.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lazardlab.h"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Config {
  std::string group = "heisenberg";
  long long p = 3;
  int d = 1;
  int n = 1;
  int prec = 6;
  int trunc = 8;
  int max_degree = -1;
  std::string rep = "trivial";
  std::string method = "koszul";
  std::string routes = "koszul,ce";
  std::string h = "1";
  unsigned long long seed = 1;
  std::string out;
  std::size_t mem_cap_mb = 4096;
  int samples = 64;
  std::string samples_file;
  int n_max = 3;
  bool timing = false;
};

struct Failure {
  int exit_code;
};

// Prints the error for a failed call and unwinds to main.
void check(lazard_status s, const std::string& what) {
  if (s == LAZARD_OK) return;
  std::cerr << "lazard-lab: " << what << ": " << lazard_status_name(s) << ": " << lazard_last_error() << "\n";
  throw Failure{lazard_exit_code(s)};
}

void config_error(const std::string& msg) {
  std::cerr << "lazard-lab: " << msg << "\n";
  throw Failure{2};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string take(char* s) {
  std::string r = s ? s : "";
  lazard_string_free(s);
  return r;
}

// Writes next to the target, then renames.
void write_output(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path target(c.out);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) config_error("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f) config_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) config_error("cannot rename to '" + target.string() + "': " + ec.message());
}

struct Group {
  lazard_group* g = nullptr;
  ~Group() { lazard_group_free(g); }
};

void open_group(const Config& c, Group& out) {
  if (fs::is_regular_file(c.group)) {
    check(lazard_group_from_json(read_file(c.group).c_str(), &out.g), "group spec '" + c.group + "'");
    return;
  }
  check(lazard_group_builtin(c.group.c_str(), c.p, c.d, c.n, c.prec, &out.g), "group '" + c.group + "'");
}

std::string options(const Config& c) {
  json o = {{"rep", c.rep},
            {"method", c.method},
            {"N", c.prec},
            {"D", c.trunc},
            {"max_degree", c.max_degree},
            {"n_max", c.n_max},
            {"mem_cap_mb", c.mem_cap_mb},
            {"timing", c.timing}};
  json routes = json::array();
  std::stringstream ss(c.routes);
  for (std::string r; std::getline(ss, r, ',');)
    if (!r.empty()) routes.push_back(r);
  o["routes"] = routes;
  if (const char* dir = std::getenv("LAZARDLAB_CACHE_DIR"); dir && *dir) o["cache_dir"] = dir;
  return o.dump();
}

void parse_h(const std::string& h, long long& num, long long& den) {
  const auto slash = h.find('/');
  try {
    std::size_t used = 0;
    num = std::stoll(h.substr(0, slash), &used);
    if (used != h.substr(0, slash).size()) throw std::invalid_argument(h);
    den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(h.substr(slash + 1), &used);
      if (used != h.substr(slash + 1).size()) throw std::invalid_argument(h);
    }
  } catch (const std::exception&) {
    config_error("--h: expected a rational a/b, got '" + h + "'");
  }
  if (den <= 0 || num < 0) config_error("--h must be a nonnegative rational with positive denominator");
}

int cmd_group_validate(const Config& c) {
  Group G;
  open_group(c, G);
  char* out = nullptr;
  int pass = 0;
  check(lazard_group_validate(G.g, c.samples, c.prec, c.seed, &out, &pass), "group-validate");
  write_output(c, take(out));
  return pass ? 0 : 1;
}

int cmd_cohomology(const Config& c) {
  Group G;
  open_group(c, G);
  char* out = nullptr;
  int pass = 0;
  check(lazard_cohomology(G.g, options(c).c_str(), &out, &pass), "cohomology");
  write_output(c, take(out));
  return pass ? 0 : 1;
}

int cmd_compare(const Config& c) {
  Group G;
  open_group(c, G);
  char* out = nullptr;
  int match = 0;
  check(lazard_compare(G.g, options(c).c_str(), &out, &match), "compare");
  write_output(c, take(out));
  return match ? 0 : 1;
}

int cmd_amice(const Config& c) {
  if (c.samples_file.empty()) config_error("amice: --samples FILE is required");
  long long num = 0, den = 1;
  parse_h(c.h, num, den);
  char* out = nullptr;
  int verdict = 0;
  check(lazard_amice(read_file(c.samples_file).c_str(), num, den, &out, &verdict), "amice");
  write_output(c, take(out));
  return 0;
}

int cmd_duality_demo(const Config& c, bool with_group) {
  char* out = nullptr;
  int pass = 0;
  check(lazard_duality_demo(c.p, c.prec, c.trunc, c.seed, &out, &pass), "duality-demo");
  json j = {{"pairing", json::parse(take(out))}};
  if (with_group) {
    Group G;
    open_group(c, G);
    int gpass = 0;
    check(lazard_duality(G.g, options(c).c_str(), &out, &gpass), "duality");
    j["group"] = json::parse(take(out));
    pass = pass && gpass;
  }
  j["pass"] = static_cast<bool>(pass);
  write_output(c, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lazard-lab: p-adic group cohomology workbench"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--group", c.group, "builtin name (additive, heisenberg, gl2_congruence) or spec file");
    s->add_option("--p", c.p, "prime");
    s->add_option("--d", c.d, "dimension (additive)");
    s->add_option("--n", c.n, "congruence level");
    s->add_option("--prec", c.prec, "precision N");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--out", c.out, "output file (default stdout)");
  };
  auto add_route = [&](CLI::App* s) {
    s->add_option("--trunc", c.trunc, "truncation degree D");
    s->add_option("--max-degree", c.max_degree, "highest cohomological degree (-1: all)");
    s->add_option("--rep", c.rep, "trivial | standard | adjoint | mod:<m>");
    s->add_option("--mem-cap-mb", c.mem_cap_mb, "memory cap for finite quotients");
    s->add_option("--n-max", c.n_max, "deepest quotient level for the bar route");
    s->add_flag("--timing", c.timing, "record wall time (breaks byte-identical output)");
  };

  auto* validate = app.add_subcommand("group-validate", "check the group law axioms on seeded samples");
  add_common(validate);
  validate->add_option("--samples", c.samples, "number of samples");

  auto* coh = app.add_subcommand("cohomology", "cohomology by one route");
  add_common(coh);
  add_route(coh);
  coh->add_option("--method", c.method, "koszul | bar | ce");

  auto* cmpc = app.add_subcommand("compare", "run several routes and compare");
  add_common(cmpc);
  add_route(cmpc);
  cmpc->add_option("--routes", c.routes, "comma-separated routes (koszul, ce, bar)");

  auto* amice = app.add_subcommand("amice", "Amice profile of a Mahler sample file");
  amice->add_option("--samples", c.samples_file, "sample file (JSON)");
  amice->add_option("--h", c.h, "radius h as a/b");
  amice->add_option("--out", c.out, "output file (default stdout)");

  auto* demo = app.add_subcommand("duality-demo", "residue and sequence pairings; group duality with --group");
  add_common(demo);
  add_route(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_group_validate(c);
    if (*coh) return cmd_cohomology(c);
    if (*cmpc) return cmd_compare(c);
    if (*amice) return cmd_amice(c);
    if (*demo) return cmd_duality_demo(c, demo->count("--group") > 0);
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "lazard-lab: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
