#include "kpinf/field.hpp"

#include "kpinf/errors.hpp"

namespace kpinf {

Field Field::prime(unsigned long p) {
    mpz_class z(p);
    if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 25) == 0)
        throw PreconditionError(std::to_string(p) + " is not prime");
    return Field(p);
}

Field Field::parse(const std::string& name) {
    if (name == "Q") return rationals();
    if (name == "Fp") return prime(2147483647UL);
    if (name.size() > 1 && name[0] == 'F') {
        try {
            std::size_t used = 0;
            const unsigned long p = std::stoul(name.substr(1), &used);
            if (used == name.size() - 1) return prime(p);
        } catch (const std::exception&) {
        }
    }
    throw PreconditionError("unknown field '" + name + "' (expected Q, Fp or F<prime>)");
}

Scalar Field::normalize(const Scalar& x) const {
    if (p_ == 0) {
        Scalar r = x;
        r.canonicalize();
        return r;
    }
    const mpz_class p(p_);
    mpz_class num = x.get_num() % p;
    mpz_class den = x.get_den() % p;
    if (den == 0) throw PreconditionError("division by zero in " + name());
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * den_inv) % p;
    if (r < 0) r += p;
    return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
    const Scalar n = normalize(a);
    if (n == 0) throw PreconditionError("division by zero");
    return normalize(Scalar(1) / n);
}

}  // namespace kpinf
