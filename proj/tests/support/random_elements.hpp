#pragma once

#include <memory>
#include <random>
#include <vector>

#include "kpinf/kp_algebra.hpp"
#include "kpinf/paths.hpp"

namespace kpinf::testing {

/// Draws spanning terms s_λ s_{μ*} from paths of small total degree.
class TermSampler {
public:
    TermSampler(std::shared_ptr<const KGraph> g, Field f, int max_total, std::uint64_t seed)
        : g_(std::move(g)), f_(f), rng_(seed) {
        by_source_.resize(g_->vertex_count());
        for (VertexId v = 0; v < static_cast<VertexId>(g_->vertex_count()); ++v)
            for (const Path& p : paths_up_to(*g_, v, max_total)) {
                all_.push_back(p);
                by_source_[p.source()].push_back(p);
            }
    }

    const std::vector<Path>& paths() const { return all_; }
    std::mt19937_64& rng() { return rng_; }

    Path path() { return all_[pick(all_.size())]; }
    Path path_with_source(VertexId w) { return by_source_[w][pick(by_source_[w].size())]; }

    Scalar scalar() {
        std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
        int n = 0;
        while (n == 0) n = num(rng_);
        return f_.normalize(Scalar(n, den(rng_)));
    }

    KPElement term(bool with_coefficient = false) {
        Path lambda = path();
        Path mu = path_with_source(lambda.source());
        return KPElement::term(g_, f_, lambda, mu, with_coefficient ? scalar() : Scalar(1));
    }

    /// A term s_ν s_{ρ*} whose ν is a prefix or an extension of `mu`, so the
    /// product with anything ending in s_{μ*} is usually nonzero.
    KPElement term_meeting(const Path& mu, bool with_coefficient = false) {
        std::vector<const Path*> hits;
        for (const Path& p : all_)
            if (p.range() == mu.range() && (has_prefix(*g_, p, mu) || has_prefix(*g_, mu, p))) hits.push_back(&p);
        const Path& nu = *hits[pick(hits.size())];
        Path rho = path_with_source(nu.source());
        return KPElement::term(g_, f_, nu, rho, with_coefficient ? scalar() : Scalar(1));
    }

    /// Sum of 1..max_terms random scaled terms.
    KPElement element(int max_terms) {
        KPElement e(g_, f_);
        const int n = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_terms)));
        for (int i = 0; i < n; ++i) e = e + term(true);
        return e;
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    std::shared_ptr<const KGraph> g_;
    Field f_;
    std::mt19937_64 rng_;
    std::vector<Path> all_;
    std::vector<std::vector<Path>> by_source_;
};

}  // namespace kpinf::testing
