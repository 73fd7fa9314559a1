#pragma once

#include <compare>
#include <map>
#include <memory>
#include <vector>

#include "kpinf/field.hpp"
#include "kpinf/kgraph.hpp"

namespace kpinf {

/// The spanning element s_λ s_{μ*}; requires s(λ) = s(μ).
struct KPTerm {
    Path lambda;
    Path mu;

    /// d(λ) − d(μ).
    Degree grade() const { return lambda.degree() - mu.degree(); }
    friend bool operator==(const KPTerm&, const KPTerm&) = default;
    friend std::strong_ordering operator<=>(const KPTerm&, const KPTerm&) = default;
};

/// An element of KP_K(Λ): a finite linear combination of spanning terms with
/// nonzero coefficients. Value semantics; the graph is shared and immutable.
class KPElement {
public:
    using TermMap = std::map<KPTerm, Scalar>;

    KPElement(std::shared_ptr<const KGraph> g, Field f);

    static KPElement vertex(std::shared_ptr<const KGraph> g, Field f, VertexId v);
    /// s_λ.
    static KPElement path(std::shared_ptr<const KGraph> g, Field f, const Path& lambda);
    /// s_{λ*}.
    static KPElement ghost(std::shared_ptr<const KGraph> g, Field f, const Path& lambda);
    /// c · s_λ s_{μ*}.
    static KPElement term(std::shared_ptr<const KGraph> g, Field f, const Path& lambda, const Path& mu,
                          const Scalar& c = 1);

    const KGraph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const KGraph>& graph_ptr() const noexcept { return graph_; }
    const Field& field() const noexcept { return field_; }
    const TermMap& terms() const noexcept { return terms_; }
    /// True when no terms are stored. Use equals() to test for the algebra zero.
    bool empty() const noexcept { return terms_.empty(); }
    /// Shorthand for equals(*this, 0).
    bool is_zero() const;

    /// Adds c · s_λ s_{μ*} in place.
    void add_term(const Path& lambda, const Path& mu, const Scalar& c);

    KPElement operator-() const;
    KPElement scaled(const Scalar& c) const;
    /// The same element with zero terms (used to build zeros of matching type).
    KPElement zero() const { return KPElement(graph_, field_); }

    friend KPElement operator+(const KPElement& a, const KPElement& b);
    friend KPElement operator-(const KPElement& a, const KPElement& b);
    friend KPElement operator*(const KPElement& a, const KPElement& b);

private:
    std::shared_ptr<const KGraph> graph_;
    Field field_;
    TermMap terms_;
};

KPElement kp_mul(const KPElement& a, const KPElement& b);

/// Expands each graded component to the coordinatewise maximum of its
/// λ-degrees using boundary paths; collects like terms.
KPElement normal_form(const KPElement& a);

/// normal_form(a − b) has no terms.
bool equals(const KPElement& a, const KPElement& b);

/// Distinct gradings d(λ) − d(μ) occurring among the stored terms.
std::vector<Degree> gradings(const KPElement& a);

/// Sum of s_v over the vertices appearing in the keys of the given elements.
KPElement local_unit(const std::vector<KPElement>& elems);

/// A dense rectangular matrix over KP_K(Λ).
class KPMatrix {
public:
    KPMatrix(std::size_t rows, std::size_t cols, const KPElement& zero_like);
    /// Row-major entries; all rows must have the same length.
    static KPMatrix from_rows(const std::vector<std::vector<KPElement>>& rows);
    static KPMatrix scalar(const KPElement& a) { return from_rows({{a}}); }
    static KPMatrix column(const std::vector<KPElement>& entries);
    static KPMatrix row(const std::vector<KPElement>& entries);
    static KPMatrix diagonal(const std::vector<KPElement>& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const KPElement& at(std::size_t i, std::size_t j) const { return cells_.at(i * cols_ + j); }
    KPElement& at(std::size_t i, std::size_t j) { return cells_.at(i * cols_ + j); }

    friend KPMatrix operator*(const KPMatrix& a, const KPMatrix& b);
    friend KPMatrix operator+(const KPMatrix& a, const KPMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<KPElement> cells_;
};

/// Block diagonal a ⊕ b.
KPMatrix direct_sum(const KPMatrix& a, const KPMatrix& b);
bool equals(const KPMatrix& a, const KPMatrix& b);

/// a = x·b·y. Throws PreconditionError on dimension mismatch.
bool precsim_verify(const KPMatrix& a, const KPMatrix& b, const KPMatrix& x, const KPMatrix& y);
/// rs = p and sr = q.
bool equivalent_verify(const KPElement& p, const KPElement& q, const KPElement& r, const KPElement& s);
/// ab = ba = a.
bool subidempotent_verify(const KPElement& a, const KPElement& b);
/// a·a = a.
bool is_idempotent(const KPElement& a);

}  // namespace kpinf
