#pragma once

#include "qsheaf/polynomial.hpp"

#include <cstdint>
#include <mutex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsheaf {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Exact determinant with the Leibniz sign convention in the given row order:
/// cofactor expansion up to 3x3, fraction-free (Bareiss) elimination beyond.
Polynomial det(const PolyMatrix& m);

/// Quotient and remainder of multivariate division by a single divisor.
std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);

/// a / b, throwing NotExactDivision when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

struct Ideal {
    std::size_t nvars = 0;
    MonomialOrder order;
    std::vector<Polynomial> generators;
};

/// Reduced Gröbner basis: monic, sorted by decreasing leading monomial.
struct GroebnerBasis {
    std::size_t nvars = 0;
    MonomialOrder order;
    std::vector<Polynomial> basis;

    bool is_unit() const;
    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.basis == b.basis; }
};

/// Text form of the ideal (generators and order) used as a cache key.
std::string canonical_key(const Ideal& ideal);

/// Store for reduced bases keyed by canonical_key; implementations must be
/// safe for concurrent use.
class GroebnerCache {
public:
    virtual ~GroebnerCache() = default;
    virtual std::optional<GroebnerBasis> find(const std::string& key) = 0;
    virtual void store(const std::string& key, const GroebnerBasis& gb) = 0;
};

class MemoryGroebnerCache : public GroebnerCache {
public:
    std::optional<GroebnerBasis> find(const std::string& key) override;
    void store(const std::string& key, const GroebnerBasis& gb) override;
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, GroebnerBasis> entries_;
};

/// Buchberger with normal pair selection and the coprime leading-term criterion.
GroebnerBasis groebner(const Ideal& ideal, GroebnerCache* cache = nullptr);

/// Fully reduced remainder of p modulo the basis.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

/// Monomials of the given degree outside the leading-term ideal, in
/// decreasing monomial order.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, int degree);

/// Graded dimensions of the quotient in degrees 0..up_to_degree.
std::vector<std::int64_t> quotient_dims(const GroebnerBasis& gb, int up_to_degree);

/// All exponent vectors of the given total degree in n variables.
std::vector<Monomial> monomials_of_degree(std::size_t n, int degree);

}  // namespace qsheaf
