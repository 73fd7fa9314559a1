#pragma once

#include <gmpxx.h>

#include <string>

namespace kpinf {

using Scalar = mpq_class;

/// Coefficient field: the rationals, or Z/p for a prime p. Scalars are kept
/// as mpq_class; over F_p they are canonical integers in [0, p).
class Field {
public:
    static Field rationals() { return Field(0); }
    /// `p` is trusted to be prime (checked by probabilistic primality test).
    static Field prime(unsigned long p);
    /// "Q", "Fp" (p = 2147483647) or "F<p>".
    static Field parse(const std::string& name);

    bool is_rational() const noexcept { return p_ == 0; }
    unsigned long characteristic() const noexcept { return p_; }
    std::string name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

    Scalar normalize(const Scalar& x) const;
    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(unsigned long p) : p_(p) {}
    unsigned long p_;
};

}  // namespace kpinf
