#include "kpinf/kgraph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "kpinf/errors.hpp"

namespace kpinf {

bool deglex_less(const Path& a, const Path& b) {
    const int ta = a.degree().total();
    const int tb = b.degree().total();
    if (ta != tb) return ta < tb;
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
}

KGraph::KGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
               std::vector<Square> squares)
    : rank_(rank),
      vertex_names_(std::move(vertices)),
      edges_(std::move(edges)),
      squares_(std::move(squares)) {
    if (rank_ < 1) throw PreconditionError("rank must be positive");
    for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
        if (!vertex_index_.emplace(vertex_names_[i], static_cast<VertexId>(i)).second)
            throw PreconditionError("duplicate identifier '" + vertex_names_[i] + "'");
    }
    into_.assign(vertex_names_.size() * rank_, {});
    const auto nv = static_cast<VertexId>(vertex_names_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (vertex_index_.count(e.name) || !edge_index_.emplace(e.name, static_cast<EdgeId>(i)).second)
            throw PreconditionError("duplicate identifier '" + e.name + "'");
        if (e.color < 0 || e.color >= rank_)
            throw PreconditionError("edge '" + e.name + "' has color outside 1.." + std::to_string(rank_));
        if (e.source < 0 || e.source >= nv || e.range < 0 || e.range >= nv)
            throw PreconditionError("edge '" + e.name + "' references an unknown vertex");
        into_[static_cast<std::size_t>(e.range) * rank_ + e.color].push_back(static_cast<EdgeId>(i));
    }
    const auto ne = static_cast<EdgeId>(edges_.size());
    for (const Square& sq : squares_) {
        for (EdgeId id : {sq.first, sq.second, sq.rewritten_first, sq.rewritten_second})
            if (id < 0 || id >= ne) throw PreconditionError("square references an unknown edge");
        // Duplicates and inconsistent squares are reported by validate(); the
        // first declaration wins for rewriting.
        forward_.emplace(std::pair{sq.first, sq.second}, std::pair{sq.rewritten_first, sq.rewritten_second});
        backward_.emplace(std::pair{sq.rewritten_first, sq.rewritten_second}, std::pair{sq.first, sq.second});
    }
}

std::optional<VertexId> KGraph::find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> KGraph::find_edge(std::string_view name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

VertexId KGraph::vertex_id(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    throw PreconditionError("unknown vertex '" + std::string(name) + "'");
}

bool KGraph::receives_nothing(VertexId v) const {
    for (int c = 0; c < rank_; ++c)
        if (has_edges_into(v, c)) return false;
    return true;
}

std::optional<std::pair<EdgeId, EdgeId>> KGraph::swap(EdgeId x, EdgeId y) const {
    const int cx = edges_[x].color;
    const int cy = edges_[y].color;
    if (cx == cy) return std::nullopt;
    const auto& table = cx < cy ? forward_ : backward_;
    auto it = table.find({x, y});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

Path KGraph::vertex_path(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= vertex_names_.size())
        throw PreconditionError("unknown vertex index " + std::to_string(v));
    return Path(v, v, {}, Degree(rank_));
}

Path KGraph::edge_path(EdgeId e) const {
    const Edge& ed = edges_.at(e);
    return Path(ed.range, ed.source, {e}, Degree::unit(rank_, ed.color));
}

void KGraph::rewrite_sorted(std::vector<EdgeId>& sequence, std::vector<int>& keys) const {
    // Bubble sort: every adjacent inversion has distinct colors, hence a square.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
            if (keys[i] <= keys[i + 1]) continue;
            auto swapped = swap(sequence[i], sequence[i + 1]);
            if (!swapped)
                throw PreconditionError("no square rewrites " + edges_[sequence[i]].name + " " +
                                        edges_[sequence[i + 1]].name);
            sequence[i] = swapped->first;
            sequence[i + 1] = swapped->second;
            std::swap(keys[i], keys[i + 1]);
            changed = true;
        }
    }
}

Path KGraph::make_path(VertexId range, std::vector<EdgeId> sequence) const {
    VertexId at = range;
    Degree degree(rank_);
    std::vector<int> keys;
    keys.reserve(sequence.size());
    for (EdgeId e : sequence) {
        const Edge& ed = edges_.at(e);
        if (ed.range != at)
            throw PreconditionError("edge '" + ed.name + "' is not composable at vertex '" +
                                    vertex_names_[at] + "'");
        at = ed.source;
        degree[ed.color] += 1;
        keys.push_back(ed.color);
    }
    rewrite_sorted(sequence, keys);
    return Path(range, at, std::move(sequence), std::move(degree));
}

std::string KGraph::to_text() const {
    std::ostringstream out;
    out << "kgraph v1\n";
    out << "k: " << rank_ << "\n";
    out << "vertices:";
    for (const auto& v : vertex_names_) out << ' ' << v;
    out << "\n";
    for (const Edge& e : edges_)
        out << "edge " << e.name << " color=" << (e.color + 1) << " from=" << vertex_names_[e.source]
            << " to=" << vertex_names_[e.range] << "\n";
    for (const Square& sq : squares_)
        out << "square " << edges_[sq.first].name << ' ' << edges_[sq.second].name << " ~ "
            << edges_[sq.rewritten_first].name << ' ' << edges_[sq.rewritten_second].name << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Text format

namespace {

bool is_ident_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

void check_ident(const Token& t, std::size_t line) {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), is_ident_char))
        throw ParseError("invalid identifier '" + t.text + "'", line, t.column);
}

std::string key_value(const Token& t, std::string_view key, std::size_t line) {
    const std::string prefix = std::string(key) + "=";
    if (t.text.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + prefix + "...'", line, t.column);
    return t.text.substr(prefix.size());
}

}  // namespace

KGraph load_kgraph(std::string_view text) {
    struct RawEdge {
        std::string name;
        int color;
        std::string from, to;
        std::size_t line, column;
    };
    struct RawSquare {
        Token ids[4];
        std::size_t line;
    };

    int rank = 0;
    bool header = false;
    std::vector<std::string> vertices;
    std::set<std::string> names;
    std::vector<RawEdge> raw_edges;
    std::vector<RawSquare> raw_squares;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = split_tokens(line);
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (!header) {
            if (toks.size() != 2 || toks[0].text != "kgraph" || toks[1].text != "v1")
                throw ParseError("expected header 'kgraph v1'", line_no, toks[0].column);
            header = true;
            continue;
        }
        const std::string& kw = toks[0].text;
        if (kw == "k:") {
            if (toks.size() != 2) throw ParseError("expected 'k: <int>'", line_no, toks[0].column);
            try {
                std::size_t used = 0;
                rank = std::stoi(toks[1].text, &used);
                if (used != toks[1].text.size() || rank < 1) throw std::invalid_argument("k");
            } catch (const std::exception&) {
                throw ParseError("rank must be a positive integer", line_no, toks[1].column);
            }
        } else if (kw == "vertices:") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                check_ident(toks[i], line_no);
                if (!names.insert(toks[i].text).second)
                    throw ParseError("duplicate identifier '" + toks[i].text + "'", line_no, toks[i].column);
                vertices.push_back(toks[i].text);
            }
        } else if (kw == "edge") {
            if (rank == 0) throw ParseError("'k:' must precede edges", line_no, toks[0].column);
            if (toks.size() != 5)
                throw ParseError("expected 'edge <id> color=<c> from=<v> to=<v>'", line_no, toks[0].column);
            check_ident(toks[1], line_no);
            if (!names.insert(toks[1].text).second)
                throw ParseError("duplicate identifier '" + toks[1].text + "'", line_no, toks[1].column);
            const std::string color_text = key_value(toks[2], "color", line_no);
            int color = 0;
            try {
                std::size_t used = 0;
                color = std::stoi(color_text, &used);
                if (used != color_text.size()) throw std::invalid_argument("color");
            } catch (const std::exception&) {
                throw ParseError("color must be an integer", line_no, toks[2].column);
            }
            if (color < 1 || color > rank)
                throw ParseError("color outside 1.." + std::to_string(rank), line_no, toks[2].column);
            RawEdge e{toks[1].text, color - 1, key_value(toks[3], "from", line_no),
                      key_value(toks[4], "to", line_no), line_no, toks[3].column};
            raw_edges.push_back(std::move(e));
        } else if (kw == "square") {
            if (toks.size() != 6 || toks[3].text != "~")
                throw ParseError("expected 'square <e> <f> ~ <f'> <e'>'", line_no, toks[0].column);
            raw_squares.push_back({{toks[1], toks[2], toks[4], toks[5]}, line_no});
        } else {
            throw ParseError("unknown directive '" + kw + "'", line_no, toks[0].column);
        }
        if (end == text.size()) break;
    }
    if (!header) throw ParseError("missing header 'kgraph v1'", 1, 1);
    if (rank == 0) throw ParseError("missing 'k:' line", line_no, 1);

    std::map<std::string, VertexId> vindex;
    for (std::size_t i = 0; i < vertices.size(); ++i) vindex[vertices[i]] = static_cast<VertexId>(i);
    std::map<std::string, EdgeId> eindex;
    std::vector<Edge> edges;
    for (const RawEdge& re : raw_edges) {
        auto from = vindex.find(re.from);
        auto to = vindex.find(re.to);
        if (from == vindex.end())
            throw ParseError("unknown vertex '" + re.from + "'", re.line, re.column);
        if (to == vindex.end()) throw ParseError("unknown vertex '" + re.to + "'", re.line, re.column);
        eindex[re.name] = static_cast<EdgeId>(edges.size());
        edges.push_back({re.name, re.color, from->second, to->second});
    }
    std::vector<Square> squares;
    for (const RawSquare& rs : raw_squares) {
        EdgeId ids[4];
        for (int i = 0; i < 4; ++i) {
            auto it = eindex.find(rs.ids[i].text);
            if (it == eindex.end())
                throw ParseError("unknown edge '" + rs.ids[i].text + "'", rs.line, rs.ids[i].column);
            ids[i] = it->second;
        }
        squares.push_back({ids[0], ids[1], ids[2], ids[3]});
    }
    return KGraph(rank, std::move(vertices), std::move(edges), std::move(squares));
}

KGraph load_kgraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_kgraph(buf.str());
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::MissingSquare: return "missing-square";
        case Violation::Kind::NonBijectiveSquare: return "non-bijective-square";
        case Violation::Kind::HexagonFailure: return "hexagon-failure";
        case Violation::Kind::NotLocallyConvex: return "not-locally-convex";
        case Violation::Kind::DanglingEdge: return "dangling-edge";
    }
    return "unknown";
}

std::size_t ValidationReport::count(Violation::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

// All color-sorted words reachable from `word` by rewriting inversions, in any order.
void terminal_forms(const KGraph& g, std::vector<EdgeId> word, std::set<std::vector<EdgeId>>& seen,
                    std::set<std::vector<EdgeId>>& terminals, bool& stuck) {
    if (!seen.insert(word).second) return;
    bool any = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (g.edge(word[i]).color <= g.edge(word[i + 1]).color) continue;
        any = true;
        auto sw = g.swap(word[i], word[i + 1]);
        if (!sw) {
            stuck = true;
            continue;
        }
        auto next = word;
        next[i] = sw->first;
        next[i + 1] = sw->second;
        terminal_forms(g, std::move(next), seen, terminals, stuck);
    }
    if (!any) terminals.insert(word);
}

}  // namespace

ValidationReport validate(const KGraph& g) {
    ValidationReport report;
    auto name = [&](EdgeId e) { return g.edge(e).name; };
    auto add = [&](Violation::Kind kind, std::string detail, std::vector<std::string> items) {
        report.violations.push_back({kind, std::move(detail), std::move(items)});
    };
    const auto nv = static_cast<VertexId>(g.vertex_count());
    const auto ne = static_cast<EdgeId>(g.edge_count());

    for (EdgeId e = 0; e < ne; ++e) {
        const Edge& ed = g.edge(e);
        if (ed.source < 0 || ed.source >= nv || ed.range < 0 || ed.range >= nv)
            add(Violation::Kind::DanglingEdge, "edge endpoint is not a declared vertex", {ed.name});
    }

    // Squares: each declared square must be shape-consistent, each composable
    // increasing-color pair must have exactly one square, and each composable
    // decreasing-color pair must be hit exactly once.
    std::map<std::pair<EdgeId, EdgeId>, int> domain_hits;
    std::map<std::pair<EdgeId, EdgeId>, int> codomain_hits;
    for (const Square& sq : g.squares()) {
        const Edge& e = g.edge(sq.first);
        const Edge& f = g.edge(sq.second);
        const Edge& f2 = g.edge(sq.rewritten_first);
        const Edge& e2 = g.edge(sq.rewritten_second);
        const bool shape_ok = e.color < f.color && f2.color == f.color && e2.color == e.color &&
                              e.source == f.range && f2.source == e2.range && f2.range == e.range &&
                              e2.source == f.source;
        if (!shape_ok) {
            add(Violation::Kind::NonBijectiveSquare, "square has inconsistent colors or endpoints",
                {name(sq.first), name(sq.second), name(sq.rewritten_first), name(sq.rewritten_second)});
            continue;
        }
        domain_hits[{sq.first, sq.second}] += 1;
        codomain_hits[{sq.rewritten_first, sq.rewritten_second}] += 1;
    }
    // An image pair left unhit is only reported when missing squares in the
    // same (range, source, colors) class do not already account for it.
    using ClassKey = std::tuple<VertexId, VertexId, int, int>;
    std::map<ClassKey, int> missing_in_class;
    std::map<ClassKey, std::vector<std::pair<EdgeId, EdgeId>>> unhit_in_class;
    for (EdgeId x = 0; x < ne; ++x) {
        for (EdgeId y = 0; y < ne; ++y) {
            const Edge& ex = g.edge(x);
            const Edge& ey = g.edge(y);
            if (ex.source != ey.range || ex.color == ey.color) continue;
            const ClassKey key{ex.range, ey.source, std::min(ex.color, ey.color), std::max(ex.color, ey.color)};
            if (ex.color < ey.color) {
                auto it = domain_hits.find({x, y});
                if (it == domain_hits.end()) {
                    add(Violation::Kind::MissingSquare, "composable pair has no square", {name(x), name(y)});
                    missing_in_class[key] += 1;
                } else if (it->second > 1) {
                    add(Violation::Kind::NonBijectiveSquare, "composable pair has several squares",
                        {name(x), name(y)});
                }
            } else {
                auto it = codomain_hits.find({x, y});
                const int hits = it == codomain_hits.end() ? 0 : it->second;
                if (hits == 0)
                    unhit_in_class[key].emplace_back(x, y);
                else if (hits > 1)
                    add(Violation::Kind::NonBijectiveSquare, "composable pair is the image of several squares",
                        {name(x), name(y)});
            }
        }
    }
    for (const auto& [key, pairs] : unhit_in_class) {
        if (static_cast<int>(pairs.size()) <= missing_in_class[key]) continue;
        for (const auto& [x, y] : pairs)
            add(Violation::Kind::NonBijectiveSquare, "composable pair is not the image of any square",
                {name(x), name(y)});
    }

    // Associativity: every composable triple of three distinct colors must
    // have a unique color-sorted form.
    if (g.rank() >= 3) {
        for (EdgeId x = 0; x < ne; ++x)
            for (EdgeId y = 0; y < ne; ++y) {
                if (g.edge(x).source != g.edge(y).range) continue;
                for (EdgeId z = 0; z < ne; ++z) {
                    if (g.edge(y).source != g.edge(z).range) continue;
                    const int cx = g.edge(x).color, cy = g.edge(y).color, cz = g.edge(z).color;
                    if (cx == cy || cy == cz || cx == cz) continue;
                    std::set<std::vector<EdgeId>> seen, terminals;
                    bool stuck = false;
                    terminal_forms(g, {x, y, z}, seen, terminals, stuck);
                    if (!stuck && terminals.size() > 1)
                        add(Violation::Kind::HexagonFailure, "rewriting orders disagree",
                            {name(x), name(y), name(z)});
                }
            }
    }

    // Local convexity: for λ in Λ^{e_i} and j != i, r(λ)Λ^{e_j} nonempty
    // implies s(λ)Λ^{e_j} nonempty.
    for (EdgeId e = 0; e < ne; ++e) {
        const Edge& ed = g.edge(e);
        for (int j = 0; j < g.rank(); ++j) {
            if (j == ed.color) continue;
            if (g.has_edges_into(ed.range, j) && !g.has_edges_into(ed.source, j))
                add(Violation::Kind::NotLocallyConvex,
                    "range receives color " + std::to_string(j + 1) + " but source does not",
                    {ed.name});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Paths

Path compose(const KGraph& g, const Path& p, const Path& q) {
    if (p.source() != q.range())
        throw PreconditionError("paths are not composable: s(" + path_name(g, p) + ") != r(" +
                                path_name(g, q) + ")");
    if (q.is_vertex()) return p;
    if (p.is_vertex()) return q;
    std::vector<EdgeId> seq = p.edges();
    seq.insert(seq.end(), q.edges().begin(), q.edges().end());
    return g.make_path(p.range(), std::move(seq));
}

std::pair<Path, Path> factorize(const KGraph& g, const Path& p, const Degree& m) {
    if (m.rank() != p.degree().rank() || !m.is_nonnegative() || !m.leq(p.degree()))
        throw PreconditionError("factorization degree " + m.to_string() + " is outside 0.." +
                                p.degree().to_string());
    const auto k = static_cast<int>(m.rank());
    std::vector<EdgeId> seq = p.edges();
    std::vector<int> keys(seq.size());
    std::vector<int> seen(m.rank(), 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int c = g.edge(seq[i]).color;
        const int part = seen[c] < m[c] ? 0 : 1;
        seen[c] += 1;
        keys[i] = part * k + c;
    }
    g.rewrite_sorted(seq, keys);
    const auto split = static_cast<std::size_t>(m.total());
    std::vector<EdgeId> head(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<EdgeId> tail(seq.begin() + static_cast<std::ptrdiff_t>(split), seq.end());
    Path first = g.make_path(p.range(), std::move(head));
    Path second = g.make_path(first.source(), std::move(tail));
    return {std::move(first), std::move(second)};
}

Path segment(const KGraph& g, const Path& p, const Degree& m, const Degree& n) {
    if (!m.leq(n)) throw PreconditionError("segment bounds out of order");
    auto [head, rest] = factorize(g, p, n);
    return factorize(g, head, m).second;
}

bool has_prefix(const KGraph& g, const Path& p, const Path& prefix) {
    if (p.range() != prefix.range() || !prefix.degree().leq(p.degree())) return false;
    return factorize(g, p, prefix.degree()).first == prefix;
}

std::string path_name(const KGraph& g, const Path& p) {
    if (p.is_vertex()) return g.vertex_name(p.range());
    std::string out;
    for (std::size_t i = 0; i < p.edges().size(); ++i) {
        if (i) out += '.';
        out += g.edge(p.edges()[i]).name;
    }
    return out;
}

Path parse_path(const KGraph& g, std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = text.find('.', start);
        parts.push_back(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    if (parts.size() == 1) {
        if (auto v = g.find_vertex(parts[0])) return g.vertex_path(*v);
    }
    std::vector<EdgeId> seq;
    for (auto part : parts) {
        auto e = g.find_edge(part);
        if (!e) {
            if (g.find_vertex(part))
                throw PreconditionError("vertex '" + std::string(part) + "' cannot appear inside an edge chain");
            throw PreconditionError("unknown edge '" + std::string(part) + "'");
        }
        seq.push_back(*e);
    }
    const VertexId range = g.edge(seq.front()).range;
    return g.make_path(range, std::move(seq));
}

}  // namespace kpinf
