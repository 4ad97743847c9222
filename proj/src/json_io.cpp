#include "srk/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "srk/parse.hpp"

namespace srk {

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

namespace {

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json rational_json(const mpq_class& q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return rational_string(q);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json monomial_json(const Monomial& m) {
  json a = json::array();
  for (auto e : m) a.push_back(e);
  return a;
}

}  // namespace

json to_json(const Matrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Subspace& S) {
  return json{{"ambient", S.ambient()}, {"field", S.field().spec()}, {"basis", to_json(S.basis())}};
}

json to_json(const HomPoly& f, const std::vector<std::string>& vars) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(json{{"exp", monomial_json(t.exponents)}, {"coeff", t.coeff.to_string()}});
  return json{{"field", f.field().spec()}, {"vars", vars}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

json to_json(const TRankResult& t) {
  json w = json::array();
  for (const auto& x : t.weights) w.push_back(integer_json(x));
  json tight = json::array();
  for (const auto& m : t.tight_support) tight.push_back(monomial_json(m));
  return json{{"value", rational_string(t.value)}, {"weights", std::move(w)}, {"tight_support", std::move(tight)}};
}

json to_json(const GRankBracket& b) {
  return json{{"lower", rational_string(b.lower)},
              {"upper", rational_string(b.upper)},
              {"exact", b.lower == b.upper},
              {"basis_change", to_json(b.basis_change)},
              {"best_trial", b.best_trial},
              {"weights", to_json(b.best)["weights"]},
              {"slicing_witness", to_json(b.slicing_witness)},
              {"trials", b.trials},
              {"seed", b.seed}};
}

json to_json(const DescentCertificate& c) {
  json levels = json::array();
  for (const auto& l : c.levels) levels.push_back(json{{"collection_size", l.collection_size}, {"minimal_sets", l.minimal_sets}});
  return json{{"degree", c.degree},
              {"r", c.r},
              {"orbit_size", c.orbit_size},
              {"deduplicated", true},
              {"levels", std::move(levels)},
              {"L0", to_json(c.L0)},
              {"codim_L0", c.codim_L0},
              {"bound", integer_json(c.bound)},
              {"within_bound", c.within_bound},
              {"rational", c.rational},
              {"on_hypersurface", c.on_hypersurface}};
}

json to_json(const BoundCheck& b) {
  json j{{"name", b.name}, {"limit", rational_json(b.limit)}, {"ok", b.ok}};
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

json slice_rank_json(const SliceRankResult& r) {
  return json{{"rank", r.rank},
              {"witness", to_json(r.witness)},
              {"tests_performed", r.tests_performed},
              {"transcript", hex64(r.certificate.transcript)}};
}

json config_json(const SlicingConfig& cfg, const BoundsReport* bounds) {
  json subs = json::array();
  for (const auto& P : cfg.subspaces) subs.push_back(to_json(P));
  json j{{"rank", cfg.rank},
         {"witness", cfg.subspaces.empty() ? json() : to_json(cfg.subspaces.front())},
         {"pf_count", cfg.subspaces.size()},
         {"codim_Lf", cfg.codim_Lf}};
  if (bounds) {
    json bs = json::array();
    for (const auto& b : bounds->bounds) bs.push_back(to_json(b));
    j["bounds"] = std::move(bs);
    if (bounds->essential_dim) j["essential_dim"] = *bounds->essential_dim;
  }
  j["tests_performed"] = cfg.tests_performed;
  j["transcript"] = hex64(cfg.transcript);
  j["subspaces"] = std::move(subs);
  j["Lf"] = to_json(cfg.Lf);
  return j;
}

Subspace subspace_from_json(const json& j) {
  const Field F = Field::parse(j.at("field").get<std::string>());
  const std::size_t n = j.at("ambient").get<std::size_t>();
  std::vector<Vector> rows;
  for (const auto& row : j.at("basis")) {
    Vector v;
    for (const auto& e : row) v.push_back(parse_field_element(e.get<std::string>(), F));
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "basis row length differs from ambient dimension");
    rows.push_back(std::move(v));
  }
  return Subspace::span(F, n, rows);
}

HomPoly poly_from_json(const json& j) {
  const Field F = Field::parse(j.at("field").get<std::string>());
  const std::size_t n = j.at("vars").size();
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& e : t.at("exp")) m.push_back(e.get<std::uint16_t>());
    terms.push_back({std::move(m), parse_field_element(t.at("coeff").get<std::string>(), F)});
  }
  return HomPoly::normalize(F, n, std::move(terms), j.at("degree").get<unsigned>());
}

namespace {

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string subspace_text(const json& s) {
  std::string out = "dim " + std::to_string(s["basis"].size()) + " in " + s["field"].get<std::string>() + "^" +
                    std::to_string(s["ambient"].get<std::size_t>());
  if (s["basis"].empty()) return out;
  out += "  rows";
  for (const auto& row : s["basis"]) {
    out += " (";
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + scalar_text(row[i]);
    out += ")";
  }
  return out;
}

bool is_subspace(const json& v) { return v.is_object() && v.contains("basis") && v.contains("ambient"); }

std::string value_text(const json& v, const std::string& indent) {
  if (is_subspace(v)) return subspace_text(v);
  if (v.is_array()) {
    if (v.empty()) return "[]";
    bool flat = true;
    for (const auto& e : v) flat = flat && !e.is_structured();
    if (flat) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
      return out;
    }
    std::string out;
    for (const auto& e : v) {
      out += "\n" + indent + "- ";
      if (is_subspace(e)) {
        out += subspace_text(e);
      } else if (e.is_object()) {
        bool firstkv = true;
        for (auto it = e.begin(); it != e.end(); ++it) {
          out += (firstkv ? "" : "  ") + it.key() + "=" + (it.value().is_structured() ? it.value().dump() : scalar_text(it.value()));
          firstkv = false;
        }
      } else {
        out += e.dump();
      }
    }
    return out;
  }
  if (v.is_object()) return v.dump();
  return scalar_text(v);
}

}  // namespace

std::string render_text(const json& j) {
  if (!j.is_object()) return value_text(j, "  ") + "\n";
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  std::ostringstream os;
  for (auto it = j.begin(); it != j.end(); ++it)
    os << it.key() << std::string(width - it.key().size() + 2, ' ') << value_text(it.value(), "  ") << "\n";
  return os.str();
}

}  // namespace srk
