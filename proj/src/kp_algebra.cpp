#include "kpinf/kp_algebra.hpp"

#include <set>

#include "kpinf/errors.hpp"
#include "kpinf/paths.hpp"

namespace kpinf {

namespace {

void require_same(const KPElement& a, const KPElement& b) {
    if (a.graph_ptr().get() != b.graph_ptr().get()) throw PreconditionError("elements belong to different graphs");
    if (!(a.field() == b.field()))
        throw PreconditionError("elements use different fields (" + a.field().name() + ", " + b.field().name() + ")");
}

}  // namespace

KPElement::KPElement(std::shared_ptr<const KGraph> g, Field f) : graph_(std::move(g)), field_(f) {
    if (!graph_) throw PreconditionError("null graph");
}

KPElement KPElement::vertex(std::shared_ptr<const KGraph> g, Field f, VertexId v) {
    const Path p = g->vertex_path(v);
    return term(std::move(g), f, p, p);
}

KPElement KPElement::path(std::shared_ptr<const KGraph> g, Field f, const Path& lambda) {
    const Path s = g->vertex_path(lambda.source());
    return term(std::move(g), f, lambda, s);
}

KPElement KPElement::ghost(std::shared_ptr<const KGraph> g, Field f, const Path& lambda) {
    const Path s = g->vertex_path(lambda.source());
    return term(std::move(g), f, s, lambda);
}

KPElement KPElement::term(std::shared_ptr<const KGraph> g, Field f, const Path& lambda, const Path& mu,
                          const Scalar& c) {
    KPElement e(std::move(g), f);
    e.add_term(lambda, mu, c);
    return e;
}

void KPElement::add_term(const Path& lambda, const Path& mu, const Scalar& c) {
    if (lambda.source() != mu.source())
        throw PreconditionError("s_λ s_μ* needs s(λ) = s(μ): " + path_name(*graph_, lambda) + ", " +
                                path_name(*graph_, mu));
    const Scalar x = field_.normalize(c);
    if (x == 0) return;
    auto [it, inserted] = terms_.try_emplace(KPTerm{lambda, mu}, x);
    if (inserted) return;
    it->second = field_.add(it->second, x);
    if (it->second == 0) terms_.erase(it);
}

bool KPElement::is_zero() const { return normal_form(*this).empty(); }

KPElement KPElement::operator-() const { return scaled(-1); }

KPElement KPElement::scaled(const Scalar& c) const {
    KPElement out(graph_, field_);
    for (const auto& [t, x] : terms_) out.add_term(t.lambda, t.mu, field_.mul(x, c));
    return out;
}

KPElement operator+(const KPElement& a, const KPElement& b) {
    require_same(a, b);
    KPElement out = a;
    for (const auto& [t, x] : b.terms_) out.add_term(t.lambda, t.mu, x);
    return out;
}

KPElement operator-(const KPElement& a, const KPElement& b) {
    require_same(a, b);
    KPElement out = a;
    for (const auto& [t, x] : b.terms_) out.add_term(t.lambda, t.mu, a.field_.neg(x));
    return out;
}

KPElement operator*(const KPElement& a, const KPElement& b) {
    require_same(a, b);
    const KGraph& g = *a.graph_;
    KPElement out(a.graph_, a.field_);
    for (const auto& [s, x] : a.terms_) {
        for (const auto& [t, y] : b.terms_) {
            if (s.mu.range() != t.lambda.range()) continue;
            const Scalar c = a.field_.mul(x, y);
            for (const Path& m : mce(g, s.mu, t.lambda)) {
                const Path alpha = factorize(g, m, s.mu.degree()).second;
                const Path beta = factorize(g, m, t.lambda.degree()).second;
                out.add_term(compose(g, s.lambda, alpha), compose(g, t.mu, beta), c);
            }
        }
    }
    return out;
}

KPElement kp_mul(const KPElement& a, const KPElement& b) { return a * b; }

KPElement normal_form(const KPElement& a) {
    const KGraph& g = a.graph();
    std::map<Degree, std::vector<const std::pair<const KPTerm, Scalar>*>> groups;
    for (const auto& entry : a.terms()) groups[entry.first.grade()].push_back(&entry);
    KPElement out = a.zero();
    for (const auto& [grade, items] : groups) {
        Degree m = items.front()->first.lambda.degree();
        for (const auto* it : items) m = join(m, it->first.lambda.degree());
        for (const auto* it : items) {
            const KPTerm& t = it->first;
            const auto ext = enumerate_paths(g, t.lambda.source(), m - t.lambda.degree(), PathMode::Boundary);
            for (const Path& tau : ext.paths)
                out.add_term(compose(g, t.lambda, tau), compose(g, t.mu, tau), it->second);
        }
    }
    return out;
}

bool equals(const KPElement& a, const KPElement& b) { return normal_form(a - b).empty(); }

std::vector<Degree> gradings(const KPElement& a) {
    std::set<Degree> ds;
    for (const auto& [t, x] : a.terms()) ds.insert(t.grade());
    return {ds.begin(), ds.end()};
}

KPElement local_unit(const std::vector<KPElement>& elems) {
    if (elems.empty()) throw PreconditionError("local_unit needs at least one element");
    std::set<VertexId> vs;
    for (const auto& e : elems) {
        require_same(elems.front(), e);
        for (const auto& [t, x] : e.terms()) {
            vs.insert(t.lambda.range());
            vs.insert(t.mu.range());
        }
    }
    KPElement out = elems.front().zero();
    for (VertexId v : vs) out = out + KPElement::vertex(out.graph_ptr(), out.field(), v);
    return out;
}

// ---------------------------------------------------------------------------

KPMatrix::KPMatrix(std::size_t rows, std::size_t cols, const KPElement& zero_like)
    : rows_(rows), cols_(cols), cells_(rows * cols, zero_like.zero()) {}

KPMatrix KPMatrix::from_rows(const std::vector<std::vector<KPElement>>& rows) {
    if (rows.empty() || rows.front().empty()) throw PreconditionError("matrix needs at least one entry");
    KPMatrix m(rows.size(), rows.front().size(), rows.front().front());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            require_same(rows.front().front(), rows[i][j]);
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

KPMatrix KPMatrix::column(const std::vector<KPElement>& entries) {
    std::vector<std::vector<KPElement>> rows;
    for (const auto& e : entries) rows.push_back({e});
    return from_rows(rows);
}

KPMatrix KPMatrix::row(const std::vector<KPElement>& entries) { return from_rows({entries}); }

KPMatrix KPMatrix::diagonal(const std::vector<KPElement>& entries) {
    if (entries.empty()) throw PreconditionError("matrix needs at least one entry");
    KPMatrix m(entries.size(), entries.size(), entries.front());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

KPMatrix operator*(const KPMatrix& a, const KPMatrix& b) {
    if (a.cols_ != b.rows_)
        throw PreconditionError("dimension mismatch: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    KPMatrix out(a.rows_, b.cols_, a.cells_.front());
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j)
            for (std::size_t l = 0; l < a.cols_; ++l) out.at(i, j) = out.at(i, j) + a.at(i, l) * b.at(l, j);
    return out;
}

KPMatrix operator+(const KPMatrix& a, const KPMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("dimension mismatch in sum");
    KPMatrix out = a;
    for (std::size_t i = 0; i < a.cells_.size(); ++i) out.cells_[i] = a.cells_[i] + b.cells_[i];
    return out;
}

KPMatrix direct_sum(const KPMatrix& a, const KPMatrix& b) {
    KPMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.at(0, 0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

bool equals(const KPMatrix& a, const KPMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("dimension mismatch in comparison");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!equals(a.at(i, j), b.at(i, j))) return false;
    return true;
}

bool precsim_verify(const KPMatrix& a, const KPMatrix& b, const KPMatrix& x, const KPMatrix& y) {
    const KPMatrix prod = x * b * y;
    if (prod.rows() != a.rows() || prod.cols() != a.cols())
        throw PreconditionError("dimension mismatch: x*b*y does not match a");
    return equals(a, prod);
}

bool equivalent_verify(const KPElement& p, const KPElement& q, const KPElement& r, const KPElement& s) {
    return equals(r * s, p) && equals(s * r, q);
}

bool subidempotent_verify(const KPElement& a, const KPElement& b) { return equals(a * b, a) && equals(b * a, a); }

bool is_idempotent(const KPElement& a) { return equals(a * a, a); }

}  // namespace kpinf
