#include "srk/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace srk {

namespace detail {

// Fields with m > 1 use log/exp/Zech tables, so q is capped.
constexpr std::uint64_t kMaxTableOrder = std::uint64_t{1} << 24;
constexpr std::uint32_t kNoLog = 0xffffffffu;

struct FieldImpl {
  std::uint64_t p = 0;
  unsigned m = 1;
  std::vector<std::uint64_t> modulus;
  std::uint64_t q = 0;
  bool default_modulus = true;

  // m > 1 only.
  std::vector<std::uint32_t> log;   // log[code], kNoLog for 0
  std::vector<std::uint32_t> exp;   // exp[k] for k in [0, 2(q-1))
  std::vector<std::uint32_t> zech;  // 1 + a^k = a^{zech[k]}, kNoLog if zero
  std::uint32_t log_minus_one = 0;

  std::uint64_t digit_add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, scale = 1;
    for (unsigned i = 0; i < m; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }
};

namespace {

using Poly = std::vector<std::uint64_t>;  // F_p coefficients, low to high

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g over F_p.
Poly poly_rem(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - mulmod(lead, g[i], p)) % p;
    }
    trim(f);
  }
  return f;
}

Poly decode(std::uint64_t code, std::uint64_t p, unsigned len) {
  Poly out(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

std::uint64_t encode(const Poly& f, std::uint64_t p, unsigned len) {
  std::uint64_t code = 0, scale = 1;
  for (unsigned i = 0; i < len; ++i) {
    code += (i < f.size() ? f[i] : 0) * scale;
    scale *= p;
  }
  return code;
}

// Exhaustive trial division by every monic polynomial of degree 1..m/2.
bool irreducible(const Poly& f, std::uint64_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m <= 1) return m == 1;
  for (unsigned k = 1; k <= m / 2; ++k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = decode(c, p, k);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint64_t p, unsigned m) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly f = decode(c, p, m);
    f.push_back(1);
    if (irreducible(f, p)) return f;
  }
  fail(ErrorCode::InternalError, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void build_tables(FieldImpl& F) {
  const std::uint64_t p = F.p, q = F.q;
  const unsigned m = F.m;
  auto slow_mul = [&](std::uint64_t a, std::uint64_t b) {
    Poly x = decode(a, p, m), y = decode(b, p, m);
    Poly prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + mulmod(x[i], y[j], p)) % p;
    return encode(poly_rem(prod, F.modulus, p), p, m);
  };
  auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto factors = prime_factors(q - 1);
  std::uint64_t prim = 0;
  for (std::uint64_t c = 2; c < q && prim == 0; ++c) {
    bool ok = true;
    for (auto l : factors) {
      if (slow_pow(c, (q - 1) / l) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) prim = c;
  }
  if (q == 2) prim = 1;
  if (prim == 0) fail(ErrorCode::InternalError, "no primitive element");

  F.log.assign(q, kNoLog);
  F.exp.assign(2 * (q - 1), 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < q - 1; ++k) {
    F.exp[k] = F.exp[k + q - 1] = static_cast<std::uint32_t>(x);
    F.log[x] = static_cast<std::uint32_t>(k);
    x = slow_mul(x, prim);
  }
  F.zech.assign(q - 1, kNoLog);
  for (std::uint64_t k = 0; k < q - 1; ++k) {
    const std::uint64_t s = F.digit_add(F.exp[k], 1);
    F.zech[k] = s == 0 ? kNoLog : F.log[s];
  }
  F.log_minus_one = (p == 2) ? 0 : static_cast<std::uint32_t>((q - 1) / 2);
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<std::uint64_t, unsigned, Poly>, std::unique_ptr<FieldImpl>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace
}  // namespace detail

using detail::FieldImpl;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::make(std::uint64_t p, unsigned m, std::optional<std::vector<std::uint64_t>> modulus) {
  if (m < 1) fail(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  if (p == 0) {
    if (m != 1 || (modulus && !modulus->empty()))
      fail(ErrorCode::DegreeMismatch, "the rationals take no extension degree or modulus");
  } else {
    if (!is_prime(p)) fail(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 32)) fail(ErrorCode::UnsupportedField, "characteristic must be < 2^32");
  }
  detail::Poly mod;
  bool is_default = true;
  if (p > 0) {
    if (modulus) {
      mod = *modulus;
      for (auto& c : mod) {
        if (c >= p) fail(ErrorCode::FieldParseError, "modulus coefficient out of range");
      }
      if (mod.size() != m + 1) {
        fail(ErrorCode::DegreeMismatch, "modulus must have degree " + std::to_string(m));
      }
      if (mod.back() != 1) fail(ErrorCode::ReducibleModulus, "modulus must be monic");
      if (!detail::irreducible(mod, p)) fail(ErrorCode::ReducibleModulus, "modulus is reducible");
      is_default = (m == 1) ? true : (mod == detail::smallest_irreducible(p, m));
      if (m == 1) mod = {0, 1};
    } else {
      mod = (m == 1) ? detail::Poly{0, 1} : detail::smallest_irreducible(p, m);
    }
  }
  std::uint64_t q = 0;
  if (p > 0) {
    q = 1;
    for (unsigned i = 0; i < m; ++i) {
      if (q > detail::kMaxTableOrder) break;
      q *= p;
    }
    if (m > 1 && q > detail::kMaxTableOrder)
      fail(ErrorCode::UnsupportedField, "extension fields are limited to 2^24 elements");
  }

  auto& reg = detail::registry();
  std::lock_guard lock(reg.mu);
  auto key = std::make_tuple(p, m, mod);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return Field(it->second.get());
  auto impl = std::make_unique<FieldImpl>();
  impl->p = p;
  impl->m = m;
  impl->modulus = mod;
  impl->q = q;
  impl->default_modulus = is_default;
  if (p > 0 && m > 1) detail::build_tables(*impl);
  const FieldImpl* raw = impl.get();
  reg.fields.emplace(std::move(key), std::move(impl));
  return Field(raw);
}

Field Field::rationals() { return make(0, 1); }

Field Field::parse(std::string_view spec) {
  auto bad = [&](const std::string& why) -> Field {
    fail(ErrorCode::FieldParseError, "bad field spec '" + std::string(spec) + "': " + why);
  };
  auto number = [&](std::string_view s) -> std::uint64_t {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) bad("expected an integer");
    return v;
  };
  if (spec == "q" || spec == "Q" || spec == "0") return rationals();
  std::string_view head = spec, tail;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    head = spec.substr(0, colon);
    tail = spec.substr(colon + 1);
  }
  std::uint64_t p = 0;
  unsigned m = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = number(head.substr(0, caret));
    m = static_cast<unsigned>(number(head.substr(caret + 1)));
  } else {
    p = number(head);
  }
  if (spec.find(':') == std::string_view::npos) return make(p, m);
  std::vector<std::uint64_t> coeffs;
  while (!tail.empty()) {
    auto comma = tail.find(',');
    coeffs.push_back(number(tail.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    tail = tail.substr(comma + 1);
  }
  return make(p, m, coeffs);
}

std::uint64_t Field::characteristic() const { return impl_->p; }
unsigned Field::degree() const { return impl_->m; }
bool Field::is_finite() const { return impl_->p != 0; }
std::uint64_t Field::order() const { return impl_->q; }
const std::vector<std::uint64_t>& Field::modulus() const { return impl_->modulus; }

std::string Field::spec() const {
  if (!is_finite()) return "q";
  std::string s = std::to_string(impl_->p);
  if (impl_->m > 1) {
    s += "^" + std::to_string(impl_->m);
    if (!impl_->default_modulus) {
      s += ":";
      for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(impl_->modulus[i]);
      }
    }
  }
  return s;
}

FieldElement Field::zero() const {
  if (!is_finite()) return FieldElement(impl_, std::shared_ptr<const mpq_class>());
  return FieldElement(impl_, 0);
}

FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(std::int64_t v) const {
  if (!is_finite()) return from_rational(mpq_class(static_cast<long>(v)));
  const auto p = static_cast<std::int64_t>(impl_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return FieldElement(impl_, static_cast<std::uint64_t>(r));
}

FieldElement Field::from_code(std::uint64_t code) const {
  if (!is_finite()) fail(ErrorCode::RationalFieldUnsupported, "codes exist only for finite fields");
  if (code >= impl_->q) fail(ErrorCode::InvalidArgument, "element code out of range");
  return FieldElement(impl_, code);
}

FieldElement Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  if (!is_finite()) fail(ErrorCode::RationalFieldUnsupported, "coefficient vectors need a finite field");
  if (coeffs.size() > impl_->m) fail(ErrorCode::DegreeMismatch, "too many residue coefficients");
  std::uint64_t code = 0, scale = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    code += (coeffs[i] % impl_->p) * scale;
    scale *= impl_->p;
  }
  return FieldElement(impl_, code);
}

FieldElement Field::from_rational(const mpq_class& q) const {
  if (is_finite()) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class p(static_cast<unsigned long>(impl_->p));
    mpz_class n = num % p, d = den % p;
    if (n < 0) n += p;
    if (d == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes in characteristic " + std::to_string(impl_->p));
    FieldElement a = from_int(static_cast<std::int64_t>(n.get_ui()));
    FieldElement b = from_int(static_cast<std::int64_t>(d.get_ui()));
    return a / b;
  }
  mpq_class c = q;
  c.canonicalize();
  if (c == 0) return zero();
  return FieldElement(impl_, std::make_shared<const mpq_class>(std::move(c)));
}

FieldElement Field::generator() const {
  if (!is_finite()) fail(ErrorCode::RationalFieldUnsupported, "Q has no generator");
  if (impl_->m == 1) return zero();  // t mod t
  return FieldElement(impl_, impl_->p);
}

std::vector<FieldElement> Field::elements() const {
  if (!is_finite()) fail(ErrorCode::InfiniteField, "cannot enumerate Q");
  std::vector<FieldElement> out;
  out.reserve(impl_->q);
  for (std::uint64_t c = 0; c < impl_->q; ++c) out.push_back(FieldElement(impl_, c));
  return out;
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  const FieldImpl& F = *impl_;
  if (F.m == 1) {
    const std::uint64_t s = a + b;
    return s >= F.p ? s - F.p : s;
  }
  if (F.p == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t la = F.log[a], lb = F.log[b];
  const std::uint64_t n = F.q - 1;
  const std::uint64_t diff = (lb + n - la) % n;
  const std::uint32_t z = F.zech[diff];
  if (z == detail::kNoLog) return 0;
  return F.exp[la + z];
}

std::uint64_t Field::neg(std::uint64_t a) const {
  const FieldImpl& F = *impl_;
  if (a == 0) return 0;
  if (F.m == 1) return F.p - a;
  if (F.p == 2) return a;
  return F.exp[F.log[a] + F.log_minus_one];
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  const FieldImpl& F = *impl_;
  if (F.m == 1) return detail::mulmod(a, b, F.p);
  if (a == 0 || b == 0) return 0;
  return F.exp[F.log[a] + F.log[b]];
}

std::uint64_t Field::inv(std::uint64_t a) const {
  const FieldImpl& F = *impl_;
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (F.m == 1) return detail::powmod(a, F.p - 2, F.p);
  const std::uint64_t n = F.q - 1;
  return F.exp[(n - F.log[a]) % n];
}

std::uint64_t Field::frobenius_code(std::uint64_t a, unsigned e) const {
  const FieldImpl& F = *impl_;
  if (F.m == 1 || a == 0) return a;
  const std::uint64_t n = F.q - 1;
  const std::uint64_t k = detail::powmod(F.p, e, n);
  return F.exp[detail::mulmod(F.log[a], k, n)];
}

// ---------------------------------------------------------------------------

Field FieldElement::field() const {
  if (!field_) fail(ErrorCode::FieldMismatch, "detached field element");
  return Field(field_);
}

bool FieldElement::is_zero() const {
  if (!field_) return true;
  if (field_->p == 0) return !rat_ || *rat_ == 0;
  return code_ == 0;
}

bool FieldElement::is_one() const {
  if (!field_) return false;
  if (field_->p == 0) return rat_ && *rat_ == 1;
  return code_ == 1;
}

const mpq_class& FieldElement::rational() const {
  static const mpq_class kZero(0);
  if (!field_ || field_->p != 0) fail(ErrorCode::FieldMismatch, "not a rational element");
  return rat_ ? *rat_ : kZero;
}

std::vector<std::uint64_t> FieldElement::coefficients() const {
  if (!field_ || field_->p == 0) fail(ErrorCode::RationalFieldUnsupported, "no residue coefficients");
  return detail::decode(code_, field_->p, field_->m);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_ && field_ && o.field_) {
    fail(ErrorCode::FieldMismatch,
         "operands live in " + Field(field_).spec() + " and " + Field(o.field_).spec());
  }
}

FieldElement FieldElement::operator-() const {
  if (!field_) return *this;
  if (field_->p == 0) {
    if (is_zero()) return *this;
    return FieldElement(field_, std::make_shared<const mpq_class>(-*rat_));
  }
  return FieldElement(field_, Field(field_).neg(code_));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  if (!o.field_) return *this;
  if (!field_) return *this = o;
  if (field_->p == 0) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    mpq_class s = *rat_ + *o.rat_;
    rat_ = s == 0 ? nullptr : std::make_shared<const mpq_class>(std::move(s));
    return *this;
  }
  code_ = Field(field_).add(code_, o.code_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  if (!field_ || !o.field_) {
    const detail::FieldImpl* f = field_ ? field_ : o.field_;
    *this = f ? Field(f).zero() : FieldElement();
    return *this;
  }
  if (field_->p == 0) {
    if (is_zero() || o.is_zero()) {
      rat_.reset();
      return *this;
    }
    rat_ = std::make_shared<const mpq_class>(*rat_ * *o.rat_);
    return *this;
  }
  code_ = Field(field_).mul(code_, o.code_);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  if (field_->p == 0) return FieldElement(field_, std::make_shared<const mpq_class>(1 / *rat_));
  return FieldElement(field_, Field(field_).inv(code_));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_same(o);
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement base = *this;
  FieldElement r = field().one();
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::frobenius(unsigned e) const {
  if (!field_) return *this;
  if (field_->p == 0) fail(ErrorCode::RationalFieldUnsupported, "Frobenius needs a finite field");
  if (e < 1) fail(ErrorCode::InvalidArgument, "Frobenius exponent must be >= 1");
  return FieldElement(field_, Field(field_).frobenius_code(code_, e));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.field_ || !b.field_) return a.is_zero() && b.is_zero();
  if (a.field_ != b.field_) return false;
  if (a.field_->p == 0) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return *a.rat_ == *b.rat_;
  }
  return a.code_ == b.code_;
}

std::string FieldElement::to_string() const {
  if (!field_) return "0";
  if (field_->p == 0) return is_zero() ? "0" : rat_->get_str();
  if (field_->m == 1) return std::to_string(code_);
  if (code_ == 0) return "0";
  const auto c = coefficients();
  std::string out;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  fail(ErrorCode::InvalidArgument, "unknown arithmetic operation");
}

FieldElement frobenius(const FieldElement& a, unsigned e) { return a.frobenius(e); }

std::vector<FieldElement> enumerate_elements(const Field& F) { return F.elements(); }

// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(const Field& small, const Field& big) : small_(small), big_(big) {
  if (!small.is_finite() || !big.is_finite()) {
    if (small == big) return;
    fail(ErrorCode::RationalFieldUnsupported, "embeddings are between finite fields");
  }
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
    fail(ErrorCode::FieldMismatch, small.spec() + " is not a subfield of " + big.spec());
  }
  // Root of the small modulus in the big field.
  std::uint64_t root = 0;
  bool found = small.degree() == 1;
  const auto& mod = small.modulus();
  for (std::uint64_t c = 0; c < big.order() && !found; ++c) {
    std::uint64_t acc = 0, pw = 1;
    for (std::size_t i = 0; i < mod.size(); ++i) {
      acc = big.add(acc, big.mul(mod[i] % big.characteristic(), pw));
      pw = big.mul(pw, c);
    }
    if (acc == 0) {
      root = c;
      found = true;
    }
  }
  if (!found) fail(ErrorCode::InternalError, "modulus has no root in the extension");
  image_.resize(small.order());
  for (std::uint64_t code = 0; code < small.order(); ++code) {
    std::uint64_t acc = 0, pw = 1;
    for (auto c : detail::decode(code, small.characteristic(), small.degree())) {
      acc = big.add(acc, big.mul(c, pw));
      pw = big.mul(pw, root);
    }
    image_[code] = acc;
    preimage_[acc] = code;
  }
}

FieldElement FieldEmbedding::map(const FieldElement& a) const {
  if (!a.attached()) return big_.zero();
  if (!(a.field() == small_)) fail(ErrorCode::FieldMismatch, "element is not in the source field");
  if (!small_.is_finite()) return a;
  return big_.from_code(image_[a.code()]);
}

std::optional<FieldElement> FieldEmbedding::pull(const FieldElement& a) const {
  if (!a.attached()) return small_.zero();
  if (!(a.field() == big_)) fail(ErrorCode::FieldMismatch, "element is not in the target field");
  if (!small_.is_finite()) return a;
  auto it = preimage_.find(a.code());
  if (it == preimage_.end()) return std::nullopt;
  return small_.from_code(it->second);
}

}  // namespace srk
