#pragma once
// Exact scalars: arbitrary-precision rationals (GMP-backed), plus an optional
// prime-field mode used for dimension-only computations.  Rationals are kept
// canonical (lowest terms, positive denominator) by mpq_canonicalize.

#include <gmp.h>

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>

namespace extrilab {

class Rat {
 public:
  Rat() { mpq_init(q_); }
  Rat(long n) {
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }
  Rat(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
    mpq_t den;
    mpq_init(den);
    mpq_set_si(den, d, 1);
    mpq_div(q_, q_, den);
    mpq_clear(den);
  }
  Rat(const Rat& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rat(Rat&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rat& operator=(const Rat& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rat& operator=(Rat&& o) noexcept {
    if (this != &o) mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rat() { mpq_clear(q_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    Rat r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rat operator-() const {
    Rat r;
    mpq_neg(r.q_, q_);
    return r;
  }
  Rat& operator+=(const Rat& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }

  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
  int sgn() const { return mpq_sgn(q_); }

  // numerator mod p and denominator mod p, as small nonnegative ints
  unsigned long num_mod(unsigned long p) const {
    mpz_t r;
    mpz_init(r);
    mpz_mod_ui(r, mpq_numref(q_), p);
    unsigned long v = mpz_get_ui(r);
    mpz_clear(r);
    return v;
  }
  unsigned long den_mod(unsigned long p) const {
    mpz_t r;
    mpz_init(r);
    mpz_mod_ui(r, mpq_denref(q_), p);
    unsigned long v = mpz_get_ui(r);
    mpz_clear(r);
    return v;
  }

  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
  Rat numerator() const {
    Rat r;
    mpq_set_z(r.q_, mpq_numref(q_));
    return r;
  }
  Rat denominator() const {
    Rat r;
    mpq_set_z(r.q_, mpq_denref(q_));
    return r;
  }
  // valid only when the value fits a long
  long to_long() const {
    if (!is_integer()) throw std::domain_error("Rat: not an integer");
    return mpz_get_si(mpq_numref(q_));
  }

  std::string str() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }
  static Rat from_string(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.q_, s.c_str(), 10) != 0) throw std::invalid_argument("Rat: bad literal " + s);
    mpq_canonicalize(r.q_);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_t q_;
};

// A coefficient field: the rationals (prime == 0) or F_p for a configured
// prime.  Prime-field elements are carried as canonical integer Rats in
// [0, p); every arithmetic result is passed through reduce().
struct Field {
  unsigned long prime = 0;

  bool is_rational() const { return prime == 0; }

  Rat reduce(const Rat& x) const {
    if (prime == 0) return x;
    unsigned long n = x.num_mod(prime);
    unsigned long d = x.den_mod(prime);
    if (d == 0) throw std::domain_error("Field: denominator divisible by p");
    return Rat((long)((n * inv_mod(d)) % prime));
  }
  Rat add(const Rat& a, const Rat& b) const { return reduce(a + b); }
  Rat sub(const Rat& a, const Rat& b) const { return reduce(a - b); }
  Rat mul(const Rat& a, const Rat& b) const { return reduce(a * b); }
  Rat div(const Rat& a, const Rat& b) const {
    if (prime == 0) return a / b;
    Rat bb = reduce(b);
    if (bb.is_zero()) throw std::domain_error("Field: division by zero");
    return reduce(a * Rat((long)inv_mod((unsigned long)bb.to_long())));
  }
  Rat neg(const Rat& a) const { return reduce(-a); }

 private:
  unsigned long inv_mod(unsigned long a) const {
    // extended Euclid; prime is small
    long t = 0, newt = 1;
    long r = (long)prime, newr = (long)(a % prime);
    while (newr != 0) {
      long q = r / newr;
      long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw std::domain_error("Field: not invertible mod p");
    if (t < 0) t += (long)prime;
    return (unsigned long)t;
  }
};

}  // namespace extrilab
