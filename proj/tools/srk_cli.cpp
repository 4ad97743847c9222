// srk: slice rank, slicing configurations, descent and G-rank brackets
// for homogeneous polynomials over finite fields.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "srk/descent.hpp"
#include "srk/grank.hpp"
#include "srk/json_io.hpp"
#include "srk/parse.hpp"
#include "srk/slicerank.hpp"
#include "srk/verify.hpp"

using namespace srk;

namespace {

struct Args {
  std::string field = "2";
  std::string vars;
  bool json_out = false;
  std::uint64_t seed = 1;
  unsigned trials = 16;
  std::uint64_t budget = kDefaultBudget;
  unsigned trunc = 0;
  unsigned threads = 1;
  std::size_t cap = kDefaultCollectionCap;
  std::uint64_t minor_cap = 1'000'000;
  std::string file;
  std::vector<std::string> subs;
  std::vector<std::string> members;
  std::string ext;
  std::string base;
  std::string matrix;
  std::size_t samples = 0;
  std::vector<std::string> inputs;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::TheoremViolation:
    case ErrorCode::RationalityFailure:
    case ErrorCode::PropertyFailure:
    case ErrorCode::InternalError:
      return 1;
    case ErrorCode::BudgetExceeded:
      return 3;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : split_top_level(s, ',')) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(part.substr(b, e - b + 1));
  }
  return out;
}

class Session {
 public:
  explicit Session(const Args& a) : a_(a), F_(Field::parse(a.field)) {
    scan_.budget = a.budget;
    scan_.threads = std::max(1u, a.threads);
  }

  // The polynomial inputs of the command: trailing arguments or --file.
  std::vector<std::string> texts() const {
    std::vector<std::string> t = a_.inputs;
    if (!a_.file.empty()) {
      const std::string body = read_file(a_.file);
      for (auto& line : split_top_level(body, '\n'))
        if (line.find_first_not_of(" \t\r") != std::string::npos) t.push_back(line);
    }
    if (t.empty()) fail(ErrorCode::InvalidArgument, "no input polynomial (give it as an argument or with --file)");
    return t;
  }

  // Parses all texts over one variable list.
  std::vector<HomPoly> polys(const Field& F, std::vector<std::string> texts) {
    if (vars_.empty()) {
      if (!a_.vars.empty()) {
        vars_ = split_names(a_.vars);
      } else {
        std::vector<std::string> all;
        for (const auto& t : texts)
          for (const auto& v : parse_polynomial(t, F).vars)
            if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
        vars_ = all;
      }
    }
    std::vector<HomPoly> out;
    for (const auto& t : texts) out.push_back(parse_polynomial(t, F, vars_).poly);
    return out;
  }
  HomPoly poly(const Field& F) {
    auto t = texts();
    if (t.size() != 1) fail(ErrorCode::InvalidArgument, "expected exactly one polynomial");
    return polys(F, t)[0];
  }
  HomPoly poly() { return poly(F_); }

  std::vector<Subspace> dual_subspaces(const Field& F) const {
    std::vector<Subspace> out;
    for (const auto& s : a_.subs) out.push_back(parse_linear_forms(s, F, vars_));
    return out;
  }

  json run(const std::string& cmd) {
    if (cmd == "srk") return cmd_srk();
    if (cmd == "pf" || cmd == "lf") {
      const auto f = nonzero(poly());
      const auto cfg = compute_Lf(f, scan_);
      json j = config_json(cfg);
      if (cmd == "pf") {
        json k{{"rank", j["rank"]}, {"pf_count", j["pf_count"]}, {"tests_performed", j["tests_performed"]},
               {"transcript", j["transcript"]}, {"subspaces", j["subspaces"]}};
        return with_vars(k);
      }
      return with_vars(j);
    }
    if (cmd == "bounds") {
      const auto f = nonzero(poly());
      const auto cfg = compute_Lf(f, scan_);
      const auto rep = check_conjectureB_bounds(f, cfg, scan_);
      json j = config_json(cfg, &rep);
      j["all_ok"] = rep.all_ok();
      return with_vars(j);
    }
    if (cmd == "essential") {
      const auto f = poly();
      const auto W = essential_space(f, scan_);
      return with_vars(json{{"dim", W.dim()}, {"W", to_json(W)}});
    }
    if (cmd == "descend") {
      const auto f = poly();
      std::vector<Subspace> Ls;
      for (const auto& P : need_subs(F_)) Ls.push_back(P.annihilator());
      return with_vars(to_json(theorem_d_descent(f, Ls, true, a_.cap)));
    }
    if (cmd == "galois") {
      if (a_.ext.empty()) fail(ErrorCode::InvalidArgument, "galois needs --ext SPEC");
      const Field E = Field::parse(a_.ext);
      const auto f = poly();
      const auto subs = need_subs(E);
      if (subs.size() != 1) fail(ErrorCode::InvalidArgument, "galois takes exactly one --sub");
      return with_vars(to_json(galois_descent(f, subs[0].annihilator(), a_.cap)));
    }
    if (cmd == "family") {
      if (a_.base.empty()) fail(ErrorCode::InvalidArgument, "family needs --base SPEC");
      const Field B = Field::parse(a_.base);
      auto t = texts();
      if (t.size() != 1) fail(ErrorCode::InvalidArgument, "expected exactly one polynomial");
      std::vector<std::string> all = a_.members;
      all.insert(all.begin(), t[0]);
      auto ps = polys(F_, all);
      const HomPoly f = ps[0];
      std::vector<HomPoly> family(ps.begin() + 1, ps.end());
      if (family.empty()) family.push_back(f);
      const auto subs = need_subs(F_);
      if (subs.size() != 1) fail(ErrorCode::InvalidArgument, "family takes exactly one --sub");
      const auto fd = family_descent(family, f, subs[0], B, a_.cap);
      json used = json::array();
      for (auto u : fd.conjugates_used) used.push_back(u);
      return with_vars(json{{"f0", fd.f0.to_string(vars_)},
                            {"from_trace", fd.from_trace},
                            {"span_dim", fd.span_dim},
                            {"conjugates_used", used},
                            {"P_sum", to_json(fd.P_sum)},
                            {"descent", to_json(fd.certificate)}});
    }
    if (cmd == "trank") return with_vars(to_json(trank(poly())));
    if (cmd == "twedge") {
      auto t = texts();
      std::vector<std::string> parts;
      for (const auto& x : t)
        for (auto& p : split_top_level(x, ';')) parts.push_back(p);
      return with_vars(to_json(trank_collection(polys(F_, parts), a_.minor_cap)));
    }
    if (cmd == "mu") {
      if (a_.matrix.empty()) fail(ErrorCode::InvalidArgument, "mu needs --matrix");
      const auto f = poly();
      const unsigned N = a_.trunc ? a_.trunc : 16;
      const auto g = parse_ps_matrix(a_.matrix, F_, N);
      if (g.size() != f.n_vars()) fail(ErrorCode::DimensionMismatch, "matrix size differs from the variable count");
      return with_vars(json{{"mu", rational_string(mu_eval(g, f))}, {"truncation", N}});
    }
    if (cmd == "grank") {
      const auto f = nonzero(poly());
      return with_vars(to_json(grank_bracket(f, a_.trials, a_.seed, scan_)));
    }
    fail(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
  }

  json cmd_srk() {
    const auto f = poly();
    if (!a_.subs.empty()) {
      const auto subs = need_subs(F_);
      if (subs.size() != 1) fail(ErrorCode::InvalidArgument, "srk takes at most one --sub");
      const auto c = certify_upper_bound(f, subs[0]);
      return with_vars(json{{"kind", c.kind == RankCertificate::Kind::Exact ? "exact" : "bracket"},
                            {"lower", rational_string(c.lower)},
                            {"upper", rational_string(c.upper)},
                            {"witness", c.witness ? to_json(*c.witness) : json()}});
    }
    return with_vars(slice_rank_json(slice_rank(f, scan_)));
  }

 private:
  static HomPoly nonzero(HomPoly f) {
    if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "the polynomial is zero");
    return f;
  }
  std::vector<Subspace> need_subs(const Field& F) const {
    if (a_.subs.empty()) fail(ErrorCode::InvalidArgument, "give at least one --sub (comma-separated linear forms)");
    return dual_subspaces(F);
  }
  json with_vars(json j) const {
    j["vars"] = vars_;
    return j;
  }

  const Args& a_;
  Field F_;
  ScanOptions scan_;
  std::vector<std::string> vars_;
};

void emit_error(const Args& a, std::string_view name, const std::string& detail, json extra = json::object()) {
  json j{{"error", name}, {"detail", detail}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  if (a.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error: " << name << ": " << detail << "\n";
    for (auto it = extra.begin(); it != extra.end(); ++it) std::cerr << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Slice rank and descent toolkit for homogeneous polynomials"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sc, bool takes_poly = true) {
    sc->add_option("--field", a.field, "field: p, p^m, p^m:c0,c1,... or 0 for Q")->capture_default_str();
    sc->add_option("--vars", a.vars, "comma-separated variable order");
    sc->add_flag("--json", a.json_out, "emit JSON");
    sc->add_option("--budget", a.budget, "membership-test budget")->capture_default_str();
    sc->add_option("--threads", a.threads, "worker threads")->capture_default_str();
    if (takes_poly) {
      sc->add_option("--file", a.file, "read the polynomial(s) from a file, one per line");
      sc->add_option("input", a.inputs, "polynomial");
    }
  };

  std::map<std::string, CLI::App*> cmds;
  const std::vector<std::pair<std::string, std::string>> specs = {
      {"srk", "slice rank with witness"},
      {"pf", "all minimal slicing subspaces"},
      {"lf", "the common subspace L_f and its codimension"},
      {"bounds", "L_f with the codimension bounds"},
      {"essential", "minimal space of linear forms f is built from"},
      {"descend", "iterated refinement of subspaces on f = 0"},
      {"galois", "descent of a subspace over an extension"},
      {"family", "descent for a family over an extension"},
      {"trank", "T-rank in the given coordinates"},
      {"twedge", "T-rank of a wedge f1;f2;..."},
      {"mu", "valuation functional at a power-series matrix"},
      {"grank", "G-rank bracket"},
      {"verify", "run a property suite"},
  };
  for (const auto& [name, desc] : specs) {
    auto* sc = app.add_subcommand(name, desc);
    cmds[name] = sc;
    if (name == "verify") {
      common(sc, false);
      sc->add_option("suite", a.inputs, "theoremA, theoremC, theoremD, lemmas or grank")->required();
      sc->add_option("--seed", a.seed, "random seed")->capture_default_str();
      sc->add_option("--samples", a.samples, "sample count (0: suite default)");
      continue;
    }
    common(sc);
  }
  for (auto name : {"srk", "descend", "galois", "family"})
    cmds[name]
        ->add_option("--sub", a.subs, "comma-separated linear forms spanning a slicing subspace (repeatable)")
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  for (auto name : {"descend", "galois", "family"}) cmds[name]->add_option("--cap", a.cap, "collection cap")->capture_default_str();
  cmds["galois"]->add_option("--ext", a.ext, "extension field of the subspace");
  cmds["family"]->add_option("--base", a.base, "base field");
  cmds["family"]
      ->add_option("--member", a.members, "family member (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cmds["twedge"]->add_option("--cap", a.minor_cap, "wedge minor cap")->capture_default_str();
  cmds["mu"]->add_option("--matrix", a.matrix, "rows split by ';', entries by ','; entries are series in t");
  cmds["mu"]->add_option("--trunc", a.trunc, "series truncation order (default 16)");
  cmds["grank"]->add_option("--trials", a.trials, "coordinate trials")->capture_default_str();
  cmds["grank"]->add_option("--seed", a.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string cmd;
  for (const auto& [name, sc] : cmds)
    if (sc->parsed()) cmd = name;

  try {
    json out;
    int rc = 0;
    if (cmd == "verify") {
      if (a.inputs.size() != 1) fail(ErrorCode::InvalidArgument, "verify takes one suite name");
      SuiteOptions opts;
      opts.seed = a.seed;
      opts.samples = a.samples;
      opts.scan.budget = a.budget;
      opts.scan.threads = std::max(1u, a.threads);
      const auto rep = run_suite(a.inputs[0], opts);
      out = rep.to_json();
      rc = rep.ok() ? 0 : 1;
    } else {
      Session s(a);
      out = s.run(cmd);
    }
    std::cout << (a.json_out ? out.dump(2) + "\n" : render_text(out));
    return rc;
  } catch (const BudgetExceeded& e) {
    emit_error(a, e.name(), e.what(), json{{"verified_lower", e.verified_lower()}, {"tests_performed", e.tests_performed()}});
    return 3;
  } catch (const Error& e) {
    emit_error(a, e.name(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(a, "InternalError", e.what());
    return 1;
  }
}
