#include "srk/parse.hpp"

#include <cctype>
#include <map>

namespace srk {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  bool at_end() { return peek() == '\0'; }
  std::size_t pos() const { return pos_; }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    skip_ws();
    const std::size_t b = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(b, pos_ - b));
  }
  mpz_class integer() {
    skip_ws();
    const std::size_t b = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (b == pos_) error("expected an integer");
    return mpz_class(std::string(text_.substr(b, pos_ - b)));
  }
  unsigned small_uint() {
    const std::size_t at = pos_;
    const mpz_class v = integer();
    if (v > 65535) {
      pos_ = at;
      error("exponent too large");
    }
    return static_cast<unsigned>(v.get_ui());
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::SyntaxError, "at position " + std::to_string(pos_) + ": " + msg + " in \"" + std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Field and series expressions share one evaluator; N = 1 without `t`
// gives plain field elements.
class SeriesParser {
 public:
  SeriesParser(Lexer& lx, const Field& F, unsigned N, bool allow_t) : lx_(lx), F_(F), N_(N), allow_t_(allow_t) {}

  Series sum() {
    Series v = product();
    for (;;) {
      if (lx_.eat('+')) {
        add(v, product(), false);
      } else if (lx_.eat('-')) {
        add(v, product(), true);
      } else {
        return v;
      }
    }
  }

 private:
  Series constant(const FieldElement& c) const {
    Series s(N_, F_.zero());
    s[0] = c;
    return s;
  }
  static void add(Series& a, const Series& b, bool negate) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = negate ? a[i] - b[i] : a[i] + b[i];
  }
  Series mul(const Series& a, const Series& b) const {
    Series out(N_, F_.zero());
    for (unsigned i = 0; i < N_; ++i) {
      if (a[i].is_zero()) continue;
      for (unsigned j = 0; i + j < N_; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  Series div(const Series& a, const Series& b) const {
    if (b[0].is_zero()) fail(ErrorCode::DivisionByZero, "division by a series with zero constant term");
    const FieldElement inv0 = b[0].inverse();
    Series inv(N_, F_.zero());
    inv[0] = inv0;
    for (unsigned k = 1; k < N_; ++k) {
      FieldElement acc = F_.zero();
      for (unsigned j = 1; j <= k; ++j) acc += b[j] * inv[k - j];
      inv[k] = -(inv0 * acc);
    }
    return mul(a, inv);
  }

  bool atom_follows() {
    const char c = lx_.peek();
    return std::isdigit(static_cast<unsigned char>(c)) || Lexer::ident_start(c) || c == '(';
  }

  Series product() {
    Series v = unary();
    for (;;) {
      if (lx_.eat('*')) {
        v = mul(v, unary());
      } else if (lx_.eat('/')) {
        v = div(v, unary());
      } else if (atom_follows()) {
        v = mul(v, power());
      } else {
        return v;
      }
    }
  }
  Series unary() {
    if (lx_.eat('-')) {
      Series v = unary();
      for (auto& c : v) c = -c;
      return v;
    }
    return power();
  }
  Series power() {
    Series base = atom();
    if (!lx_.eat('^')) return base;
    const unsigned e = lx_.small_uint();
    Series out = constant(F_.one());
    for (unsigned i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }
  Series atom() {
    const char c = lx_.peek();
    if (c == '(') {
      lx_.eat('(');
      Series v = sum();
      lx_.expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(F_.from_rational(mpq_class(lx_.integer())));
    if (Lexer::ident_start(c)) {
      const std::size_t at = lx_.pos();
      const std::string name = lx_.ident();
      if (name == "g") {
        if (!F_.is_finite() || F_.degree() == 1)
          fail(ErrorCode::FieldParseError, "generator 'g' at position " + std::to_string(at) + " needs an extension field; field is " + F_.spec());
        return constant(F_.generator());
      }
      if (name == "t" && allow_t_) {
        Series s(N_, F_.zero());
        if (N_ > 1) s[1] = F_.one();
        return s;
      }
      fail(ErrorCode::FieldParseError, "unexpected identifier '" + name + "' at position " + std::to_string(at) +
                                           " in a field expression");
    }
    lx_.error(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
  }

  Lexer& lx_;
  Field F_;
  unsigned N_;
  bool allow_t_;
};

}  // namespace

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

FieldElement parse_field_element(std::string_view text, const Field& F) {
  Lexer lx(text);
  SeriesParser sp(lx, F, 1, false);
  Series v = sp.sum();
  if (!lx.at_end()) lx.error("trailing input");
  return v[0];
}

Series parse_series(std::string_view text, const Field& F, unsigned N) {
  if (N == 0) fail(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  Lexer lx(text);
  SeriesParser sp(lx, F, N, true);
  Series v = sp.sum();
  if (!lx.at_end()) lx.error("trailing input");
  return v;
}

PSMatrix parse_ps_matrix(std::string_view text, const Field& F, unsigned N) {
  const auto rows = split_top_level(text, ';');
  const std::size_t n = rows.size();
  PSMatrix g(F, n, N);
  for (std::size_t i = 0; i < n; ++i) {
    const auto entries = split_top_level(rows[i], ',');
    if (entries.size() != n)
      fail(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(i + 1) + " has " +
                                             std::to_string(entries.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) g(i, j) = parse_series(entries[j], F, N);
  }
  return g;
}

ParsedPolynomial parse_polynomial(std::string_view text, const Field& F,
                                  const std::optional<std::vector<std::string>>& vars) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  if (vars) {
    for (const auto& v : *vars) {
      if (v.empty() || !Lexer::ident_start(v[0])) fail(ErrorCode::SyntaxError, "invalid variable name '" + v + "'");
      if (!index.emplace(v, names.size()).second) fail(ErrorCode::SyntaxError, "duplicate variable name '" + v + "'");
      names.push_back(v);
    }
  }

  struct RawTerm {
    FieldElement coeff;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<RawTerm> raw;
  Lexer lx(text);
  if (lx.at_end()) lx.error("empty polynomial");
  bool first = true;
  while (!lx.at_end()) {
    bool negative = false;
    if (lx.eat('+')) {
    } else if (lx.eat('-')) {
      negative = true;
    } else if (!first) {
      lx.error(std::string("unexpected character '") + lx.peek() + "'");
    }
    first = false;

    RawTerm t{F.one(), {}};
    bool have_coeff = false;
    const char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.coeff = F.from_rational(mpq_class(lx.integer()));
      have_coeff = true;
    } else if (c == '(') {
      lx.eat('(');
      SeriesParser sp(lx, F, 1, false);
      t.coeff = sp.sum()[0];
      lx.expect(')');
      have_coeff = true;
    }
    for (;;) {
      const bool star = lx.eat('*');
      if (star && !have_coeff && t.factors.empty()) lx.error("'*' without a left operand");
      if (!Lexer::ident_start(lx.peek())) {
        if (star) lx.error("expected a variable after '*'");
        break;
      }
      const std::size_t at = lx.pos();
      const std::string name = lx.ident();
      auto it = index.find(name);
      if (it == index.end()) {
        if (vars) fail(ErrorCode::UnknownVariable, "unknown variable '" + name + "' at position " + std::to_string(at));
        it = index.emplace(name, names.size()).first;
        names.push_back(name);
      }
      unsigned e = 1;
      if (lx.eat('^')) e = lx.small_uint();
      t.factors.emplace_back(it->second, e);
    }
    if (!have_coeff && t.factors.empty()) lx.error("expected a term");
    if (negative) t.coeff = -t.coeff;
    raw.push_back(std::move(t));
  }

  std::vector<Term> terms;
  for (auto& t : raw) {
    Monomial m(names.size(), 0);
    for (auto [v, e] : t.factors) {
      if (m[v] + e > 65535) fail(ErrorCode::SyntaxError, "exponent too large");
      m[v] = static_cast<std::uint16_t>(m[v] + e);
    }
    terms.push_back({std::move(m), std::move(t.coeff)});
  }
  return {HomPoly::normalize(F, names.size(), std::move(terms)), std::move(names)};
}

Subspace parse_linear_forms(std::string_view text, const Field& F, const std::vector<std::string>& vars) {
  std::vector<Vector> rows;
  for (const auto& item : split_top_level(text, ',')) {
    const auto p = parse_polynomial(item, F, vars).poly;
    if (p.is_zero()) continue;
    if (p.degree() != 1) fail(ErrorCode::DegreeMismatch, "'" + item + "' is not a linear form");
    Vector row(vars.size(), F.zero());
    for (const auto& t : p.terms())
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (t.exponents[i]) row[i] = t.coeff;
    rows.push_back(std::move(row));
  }
  return Subspace::span(F, vars.size(), rows);
}

}  // namespace srk
