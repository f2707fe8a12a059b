#include "ezdkit/field.hpp"

#include <algorithm>
#include <sstream>

namespace ezdkit {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonPrimeModulus: return "NonPrimeModulus";
    case Err::ReducibleModulus: return "ReducibleModulus";
    case Err::MixedFields: return "MixedFields";
    case Err::SyntaxError: return "SyntaxError";
    case Err::UnknownVariable: return "UnknownVariable";
    case Err::NonHomogeneousRelation: return "NonHomogeneousRelation";
    case Err::DuplicateVariable: return "DuplicateVariable";
    case Err::RaggedRows: return "RaggedRows";
    case Err::NotArtinianWithinCap: return "NotArtinianWithinCap";
    case Err::AssocCheckFailed: return "AssocCheckFailed";
    case Err::AlgebraMismatch: return "AlgebraMismatch";
    case Err::EntriesNotInAlgebra: return "EntriesNotInAlgebra";
    case Err::NotShort: return "NotShort";
    case Err::NotInMaxIdeal: return "NotInMaxIdeal";
    case Err::ZeroElement: return "ZeroElement";
    case Err::UnitElement: return "UnitElement";
    case Err::WrongHilbertSeries: return "WrongHilbertSeries";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::InfiniteField: return "InfiniteField";
    case Err::PreconditionFailed: return "PreconditionFailed";
    case Err::HypothesesFail: return "HypothesesFail";
    case Err::BadArgument: return "BadArgument";
  }
  return "UnknownError";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; a != 0 mod p
  long long t = 0, nt = 1;
  long long r = (long long)p, nr = (long long)(a % p);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t, nt); nt -= q * t;
    std::swap(r, nr); nr -= q * r;
  }
  if (t < 0) t += (long long)p;
  return (std::uint64_t)t;
}

using Poly = std::vector<std::uint64_t>; // coefficients low-to-high, mod p

int pdeg(const Poly& f) {
  for (int i = (int)f.size() - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
  Poly prod(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  int dm = pdeg(modulus);
  std::uint64_t lead_inv = mod_inv(modulus[dm], p);
  for (int i = (int)prod.size() - 1; i >= dm; --i) {
    if (prod[i] == 0) continue;
    std::uint64_t c = (prod[i] * lead_inv) % p;
    for (int j = 0; j <= dm; ++j) {
      std::uint64_t sub = (c * modulus[j]) % p;
      int k = i - dm + j;
      prod[k] = (prod[k] + p - sub) % p;
    }
  }
  prod.resize(dm);
  return prod;
}

std::uint64_t eval_poly(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (int i = (int)f.size() - 1; i >= 0; --i) acc = (acc * x + f[i]) % p;
  return acc;
}

// Remainder of f by monic g, both over F_p.
Poly prem(Poly f, const Poly& g, std::uint64_t p) {
  int dg = pdeg(g);
  for (int i = pdeg(f); i >= dg; i = pdeg(f)) {
    std::uint64_t c = f[i];
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      std::uint64_t sub = (c * g[j]) % p;
      f[i - dg + j] = (f[i - dg + j] + p - sub) % p;
    }
  }
  return f;
}

// Exhaustive check, valid for degree <= 4: no roots, and for degree 4 also
// no monic quadratic factor.
bool irreducible_small(const Poly& f, std::uint64_t p) {
  int d = pdeg(f);
  if (d < 2) return false;
  for (std::uint64_t x = 0; x < p; ++x)
    if (eval_poly(f, x, p) == 0) return false;
  if (d <= 3) return true;
  for (std::uint64_t b = 0; b < p; ++b)
    for (std::uint64_t c = 0; c < p; ++c) {
      Poly q = {c, b, 1};
      if (pdeg(prem(f, q, p)) < 0) return false;
    }
  return true;
}

} // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  FieldSpec s;
  s.kind = Kind::Prime;
  s.p = p;
  return s;
}

FieldSpec FieldSpec::extension(std::uint64_t p, std::vector<std::uint64_t> modulus,
                               std::string gen_name) {
  FieldSpec s;
  s.kind = Kind::Extension;
  s.p = p;
  s.modulus = std::move(modulus);
  s.gen_name = std::move(gen_name);
  return s;
}

FieldSpec FieldSpec::rationals() {
  FieldSpec s;
  s.kind = Kind::Rationals;
  return s;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == FieldSpec::Kind::Extension) deg_ = pdeg(spec_.modulus);
}

FieldPtr Field::make(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldSpec::Kind::Prime:
      if (!is_prime_u64(spec.p))
        fail(Err::NonPrimeModulus, "p = " + std::to_string(spec.p) + " is not prime");
      if (spec.p >= (1ULL << 31))
        fail(Err::BadArgument, "prime too large for the exact kernel");
      break;
    case FieldSpec::Kind::Extension: {
      if (!is_prime_u64(spec.p))
        fail(Err::NonPrimeModulus, "p = " + std::to_string(spec.p) + " is not prime");
      FieldSpec norm = spec;
      for (auto& c : norm.modulus) c %= norm.p;
      int d = pdeg(norm.modulus);
      if (d < 2 || d > kMaxExtDegree)
        fail(Err::BadArgument, "extension degree must be in [2, 4]");
      if (norm.modulus[d] != 1)
        fail(Err::BadArgument, "modulus must be monic");
      norm.modulus.resize(d + 1);
      if (!irreducible_small(norm.modulus, norm.p))
        fail(Err::ReducibleModulus, "modulus is reducible over F_" + std::to_string(norm.p));
      return FieldPtr(new Field(norm));
    }
    case FieldSpec::Kind::Rationals:
      break;
  }
  return FieldPtr(new Field(spec));
}

std::uint64_t Field::order() const {
  if (!finite()) fail(Err::InfiniteField, "rationals have no element count");
  std::uint64_t n = 1;
  for (int i = 0; i < deg_; ++i) n *= spec_.p;
  return n;
}

void Field::check_kind(const FElem& a) const {
  bool ok = false;
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: ok = std::holds_alternative<std::uint64_t>(a.v); break;
    case FieldSpec::Kind::Extension: ok = std::holds_alternative<ExtVal>(a.v); break;
    case FieldSpec::Kind::Rationals: ok = std::holds_alternative<mpq_class>(a.v); break;
  }
  if (!ok) fail(Err::MixedFields, "element does not belong to this field");
}

FElem Field::zero() const {
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: return FElem{std::uint64_t{0}};
    case FieldSpec::Kind::Extension: return FElem{ExtVal{0, 0, 0, 0}};
    default: return FElem{mpq_class(0)};
  }
}

FElem Field::one() const { return from_int(1); }

FElem Field::from_int(long long n) const {
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: {
      long long m = n % (long long)spec_.p;
      if (m < 0) m += (long long)spec_.p;
      return FElem{(std::uint64_t)m};
    }
    case FieldSpec::Kind::Extension: {
      long long m = n % (long long)spec_.p;
      if (m < 0) m += (long long)spec_.p;
      ExtVal v{0, 0, 0, 0};
      v[0] = (std::uint64_t)m;
      return FElem{v};
    }
    default:
      return FElem{mpq_class((long)n)};
  }
}

FElem Field::from_fraction(const mpq_class& q) const {
  if (spec_.kind == FieldSpec::Kind::Rationals) {
    mpq_class c = q;
    c.canonicalize();
    return FElem{c};
  }
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class pz((unsigned long)spec_.p);
  mpz_class nm = num % pz, dm = den % pz;
  if (nm < 0) nm += pz;
  if (dm < 0) dm += pz;
  std::uint64_t n = nm.get_ui(), d = dm.get_ui();
  if (d == 0) fail(Err::BadArgument, "fraction denominator vanishes in characteristic p");
  std::uint64_t val = (n * mod_inv(d, spec_.p)) % spec_.p;
  return spec_.kind == FieldSpec::Kind::Prime ? FElem{val}
                                              : FElem{ExtVal{val, 0, 0, 0}};
}

FElem Field::generator() const {
  if (spec_.kind != FieldSpec::Kind::Extension)
    fail(Err::BadArgument, "no extension generator in this field");
  ExtVal v{0, 0, 0, 0};
  v[1] = 1;
  return FElem{v};
}

FElem Field::add(const FElem& a, const FElem& b) const {
  check_kind(a); check_kind(b);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: {
      std::uint64_t s = std::get<std::uint64_t>(a.v) + std::get<std::uint64_t>(b.v);
      if (s >= spec_.p) s -= spec_.p;
      return FElem{s};
    }
    case FieldSpec::Kind::Extension: {
      ExtVal r = std::get<ExtVal>(a.v);
      const ExtVal& y = std::get<ExtVal>(b.v);
      for (int i = 0; i < deg_; ++i) {
        r[i] += y[i];
        if (r[i] >= spec_.p) r[i] -= spec_.p;
      }
      return FElem{r};
    }
    default:
      return FElem{mpq_class(std::get<mpq_class>(a.v) + std::get<mpq_class>(b.v))};
  }
}

FElem Field::neg(const FElem& a) const {
  check_kind(a);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: {
      std::uint64_t x = std::get<std::uint64_t>(a.v);
      return FElem{x == 0 ? 0 : spec_.p - x};
    }
    case FieldSpec::Kind::Extension: {
      ExtVal r = std::get<ExtVal>(a.v);
      for (int i = 0; i < deg_; ++i)
        if (r[i] != 0) r[i] = spec_.p - r[i];
      return FElem{r};
    }
    default:
      return FElem{mpq_class(-std::get<mpq_class>(a.v))};
  }
}

FElem Field::sub(const FElem& a, const FElem& b) const { return add(a, neg(b)); }

FElem Field::mul(const FElem& a, const FElem& b) const {
  check_kind(a); check_kind(b);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime:
      return FElem{(std::get<std::uint64_t>(a.v) * std::get<std::uint64_t>(b.v)) % spec_.p};
    case FieldSpec::Kind::Extension: {
      const ExtVal& x = std::get<ExtVal>(a.v);
      const ExtVal& y = std::get<ExtVal>(b.v);
      Poly xa(x.begin(), x.begin() + deg_), ya(y.begin(), y.begin() + deg_);
      Poly prod = pmulmod(xa, ya, spec_.modulus, spec_.p);
      ExtVal r{0, 0, 0, 0};
      for (int i = 0; i < deg_ && i < (int)prod.size(); ++i) r[i] = prod[i];
      return FElem{r};
    }
    default:
      return FElem{mpq_class(std::get<mpq_class>(a.v) * std::get<mpq_class>(b.v))};
  }
}

FElem Field::inv(const FElem& a) const {
  check_kind(a);
  if (is_zero(a)) fail(Err::BadArgument, "division by zero");
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime:
      return FElem{mod_inv(std::get<std::uint64_t>(a.v), spec_.p)};
    case FieldSpec::Kind::Extension:
      // a^(q-2) = a^{-1}; the fields here are tiny, so this is fine
      return pow(a, order() - 2);
    default:
      return FElem{mpq_class(1 / std::get<mpq_class>(a.v))};
  }
}

FElem Field::pow(const FElem& a, std::uint64_t n) const {
  FElem acc = one(), base = a;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

bool Field::is_zero(const FElem& a) const {
  check_kind(a);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: return std::get<std::uint64_t>(a.v) == 0;
    case FieldSpec::Kind::Extension: {
      const ExtVal& x = std::get<ExtVal>(a.v);
      for (int i = 0; i < deg_; ++i)
        if (x[i] != 0) return false;
      return true;
    }
    default: return std::get<mpq_class>(a.v) == 0;
  }
}

bool Field::is_one(const FElem& a) const { return a == one(); }

FElem Field::element_at(std::uint64_t index) const {
  if (!finite()) fail(Err::InfiniteField, "cannot enumerate the rationals");
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: return FElem{index % spec_.p};
    default: {
      ExtVal v{0, 0, 0, 0};
      for (int i = 0; i < deg_; ++i) {
        v[i] = index % spec_.p;
        index /= spec_.p;
      }
      return FElem{v};
    }
  }
}

std::uint64_t Field::index_of(const FElem& a) const {
  check_kind(a);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime: return std::get<std::uint64_t>(a.v);
    case FieldSpec::Kind::Extension: {
      const ExtVal& x = std::get<ExtVal>(a.v);
      std::uint64_t idx = 0;
      for (int i = deg_ - 1; i >= 0; --i) idx = idx * spec_.p + x[i];
      return idx;
    }
    default: fail(Err::InfiniteField, "cannot index the rationals");
  }
}

FElem Field::sample(Rng& rng) const {
  if (finite()) return element_at(rng.below(order()));
  // small deterministic window; only used where QQ sampling is documented
  // as a bounded sweep
  long long n = (long long)rng.below(21) - 10;
  long long d = (long long)rng.below(4) + 1;
  mpq_class q((long)n, (long)d);
  q.canonicalize();
  return FElem{q};
}

std::string Field::to_string(const FElem& a) const {
  check_kind(a);
  switch (spec_.kind) {
    case FieldSpec::Kind::Prime:
      return std::to_string(std::get<std::uint64_t>(a.v));
    case FieldSpec::Kind::Extension: {
      const ExtVal& x = std::get<ExtVal>(a.v);
      std::ostringstream os;
      bool first = true;
      for (int i = deg_ - 1; i >= 0; --i) {
        if (x[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
          os << x[i];
        } else {
          if (x[i] != 1) os << x[i] << "*";
          os << spec_.gen_name;
          if (i > 1) os << "^" << i;
        }
      }
      if (first) os << "0";
      return os.str();
    }
    default:
      return std::get<mpq_class>(a.v).get_str();
  }
}


} // namespace ezdkit
