#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ezdkit/errors.hpp"
#include "ezdkit/rng.hpp"

namespace ezdkit {

inline constexpr int kMaxExtDegree = 4;

/// Which exact field a computation runs over.  Extension moduli are given
/// explicitly (no Conway-polynomial database) and capped at degree 4, which
/// keeps the irreducibility check an exhaustive root/factor test.
struct FieldSpec {
  enum class Kind { Prime, Extension, Rationals } kind = Kind::Rationals;
  std::uint64_t p = 0;                  // characteristic for Prime/Extension
  std::vector<std::uint64_t> modulus;   // monic, coefficients low-to-high, Extension only
  std::string gen_name = "g";          // printable name of the extension generator

  static FieldSpec prime(std::uint64_t p);
  static FieldSpec extension(std::uint64_t p, std::vector<std::uint64_t> modulus,
                             std::string gen_name = "g");
  static FieldSpec rationals();

  bool operator==(const FieldSpec& o) const {
    return kind == o.kind && p == o.p && modulus == o.modulus;
  }
};

/// Coefficient vector of an extension-field element, degree < deg(modulus).
using ExtVal = std::array<std::uint64_t, kMaxExtDegree>;

/// One exact scalar in canonical form: 0 <= v < p, polynomial of degree
/// < deg(modulus), or a reduced fraction.  Interpreting it requires the Field
/// it was created by; FElem itself stays small so dense matrices are cheap.
struct FElem {
  std::variant<std::uint64_t, ExtVal, mpq_class> v;

  bool operator==(const FElem& o) const { return v == o.v; }
  bool operator!=(const FElem& o) const { return !(*this == o); }
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Immutable arithmetic context.  All element operations go through the
/// handle; sharing one handle read-only across threads is safe.
class Field {
public:
  static FieldPtr make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  bool finite() const { return spec_.kind != FieldSpec::Kind::Rationals; }
  std::uint64_t characteristic() const { return finite() ? spec_.p : 0; }
  int ext_degree() const { return deg_; }
  /// Number of elements; only valid for finite fields.
  std::uint64_t order() const;
  bool same(const Field& o) const { return spec_ == o.spec_; }

  FElem zero() const;
  FElem one() const;
  FElem from_int(long long n) const;
  FElem from_fraction(const mpq_class& q) const; // reduces mod p when finite
  /// Extension generator (the class of the modulus variable); error otherwise.
  FElem generator() const;

  FElem add(const FElem& a, const FElem& b) const;
  FElem sub(const FElem& a, const FElem& b) const;
  FElem neg(const FElem& a) const;
  FElem mul(const FElem& a, const FElem& b) const;
  FElem inv(const FElem& a) const; // error on zero
  FElem pow(const FElem& a, std::uint64_t n) const;
  bool is_zero(const FElem& a) const;
  bool is_one(const FElem& a) const;

  /// Enumeration bijection [0, order()) <-> elements, finite fields only.
  FElem element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FElem& a) const;
  FElem sample(Rng& rng) const; // uniform for finite fields, small window for QQ

  /// Canonical printable form: "3", "2/3", "g^2+2*g+1" (extension elements
  /// are parenthesized by callers when used as coefficients).
  std::string to_string(const FElem& a) const;

private:
  explicit Field(FieldSpec spec);
  void check_kind(const FElem& a) const;

  FieldSpec spec_;
  int deg_ = 1; // extension degree (1 for prime field)
};

bool is_prime_u64(std::uint64_t n);

} // namespace ezdkit
