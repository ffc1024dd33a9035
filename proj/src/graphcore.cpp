#include "emlab/graphcore.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace emlab {

static void check_vertex(const Graph& g, int64_t u) {
    if (u < 0 || u >= g.n)
        throw Error("vertex " + std::to_string(u) + " out of range [0, " +
                    std::to_string(g.n) + ")");
}

void Graph::add_edge(int64_t u, int64_t v, int64_t w) {
    check_vertex(*this, u);
    check_vertex(*this, v);
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (w < 1) throw Error("edge weight must be positive");
    auto insert = [w](std::vector<std::pair<int64_t, int64_t>>& row, int64_t to) {
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(to, int64_t{0}));
        if (it != row.end() && it->first == to)
            it->second += w;
        else
            row.insert(it, {to, w});
    };
    insert(adj[u], v);
    insert(adj[v], u);
}

int64_t Graph::append_vertex() {
    adj.emplace_back();
    if (!labels.empty()) labels.emplace_back();
    return n++;
}

int64_t Graph::weight(int64_t u, int64_t v) const {
    check_vertex(*this, u);
    check_vertex(*this, v);
    auto it = std::lower_bound(adj[u].begin(), adj[u].end(), std::make_pair(v, int64_t{0}));
    return (it != adj[u].end() && it->first == v) ? it->second : 0;
}

int64_t Graph::weighted_degree(int64_t u) const {
    check_vertex(*this, u);
    int64_t d = 0;
    for (const auto& [v, w] : adj[u]) d += w;
    return d;
}

int64_t edge_unit_count(const Graph& g) {
    int64_t total = 0;
    for (int64_t u = 0; u < g.n; ++u)
        for (const auto& [v, w] : g.adj[u])
            if (v > u) total += w;
    return total;
}

int64_t max_degree(const Graph& g) {
    int64_t d = 0;
    for (int64_t u = 0; u < g.n; ++u) d = std::max(d, g.weighted_degree(u));
    return d;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::deque<int64_t> queue{0};
    seen[0] = 1;
    int64_t reached = 1;
    while (!queue.empty()) {
        int64_t u = queue.front();
        queue.pop_front();
        for (const auto& [v, w] : g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
    }
    return reached == g.n;
}

EdgeSelection all_edges(const Graph& g) {
    EdgeSelection sel;
    for (int64_t u = 0; u < g.n; ++u)
        for (const auto& [v, w] : g.adj[u])
            if (v > u) sel.edges.push_back({u, v, w});
    return sel;
}

Graph cayley_graph(const GeneratingSet& s) {
    const FiniteGroup& grp = *s.parent;
    const int64_t n = grp.order();
    Graph g(n);
    g.labels.reserve(n);
    for (int64_t i = 0; i < n; ++i) g.labels.push_back(format_element(grp.element(i)));

    std::vector<std::map<int64_t, int64_t>> counts(n);
    for (int64_t v = 0; v < n; ++v)
        for (const auto& gen : s.elems)
            counts[v][grp.index_of(grp.mul(grp.element(v), gen))]++;

    for (int64_t u = 0; u < n; ++u)
        for (const auto& [h, c] : counts[u]) {
            if (h == u) throw Error("generating set produced a self-loop");
            if (counts[h][u] != c)
                throw Error("generating set produced an asymmetric weight");
            if (h > u) g.add_edge(u, h, c);
        }
    return g;
}

Graph overlay(const Graph& a, const Graph& b) {
    if (a.n != b.n)
        throw SizeMismatchError("overlay of graphs on " + std::to_string(a.n) + " and " +
                                std::to_string(b.n) + " vertices");
    Graph out(a.n);
    out.labels = a.labels.empty() ? b.labels : a.labels;
    for (int64_t u = 0; u < a.n; ++u)
        for (const auto& [v, w] : a.adj[u])
            if (v > u) out.add_edge(u, v, w);
    for (int64_t u = 0; u < b.n; ++u)
        for (const auto& [v, w] : b.adj[u])
            if (v > u) out.add_edge(u, v, w);
    return out;
}

Graph subdivide(const Graph& g, const EdgeSelection& sel, int64_t m) {
    if (m < 1) throw DomainError("path length m must be >= 1");

    std::map<std::pair<int64_t, int64_t>, int64_t> take;
    for (const auto& e : sel.edges) {
        if (e.mult < 1) throw InvalidSelectionError("selection multiplicity must be positive");
        int64_t u = std::min(e.u, e.v), v = std::max(e.u, e.v);
        check_vertex(g, u);
        check_vertex(g, v);
        if (u == v) throw InvalidSelectionError("selection names a self-loop");
        take[{u, v}] += e.mult;
    }
    for (const auto& [uv, mult] : take)
        if (g.weight(uv.first, uv.second) < mult)
            throw InvalidSelectionError(
                "selection takes " + std::to_string(mult) + " copies of {" +
                std::to_string(uv.first) + ", " + std::to_string(uv.second) + "} but only " +
                std::to_string(g.weight(uv.first, uv.second)) + " exist");

    if (m == 1) return g;

    Graph out(g.n);
    out.labels = g.labels;
    for (int64_t u = 0; u < g.n; ++u)
        for (const auto& [v, w] : g.adj[u]) {
            if (v < u) continue;
            auto it = take.find({u, v});
            int64_t rest = w - (it == take.end() ? 0 : it->second);
            if (rest > 0) out.add_edge(u, v, rest);
        }

    for (const auto& [uv, mult] : take) {
        auto [u, v] = uv;
        for (int64_t copy = 0; copy < mult; ++copy) {
            int64_t prev = u;
            for (int64_t k = 1; k < m; ++k) {
                int64_t mid = out.append_vertex();
                if (!out.labels.empty())
                    out.labels[mid] = "sub:" + std::to_string(u) + "-" + std::to_string(v) +
                                      ":" + std::to_string(copy) + ":" + std::to_string(k);
                out.add_edge(prev, mid, 1);
                prev = mid;
            }
            out.add_edge(prev, v, 1);
        }
    }
    return out;
}

Graph build_G_of_H(const Graph& h, int64_t ell) {
    if (ell < 2) throw TooSmallError("path length ell must be >= 2");
    for (int64_t u = 0; u < h.n; ++u)
        if (h.weighted_degree(u) != 3)
            throw NotRegularError("base graph is not 3-regular at vertex " + std::to_string(u));

    const int64_t big_n = 4 * h.n;
    Graph base(big_n);
    for (int64_t v = 0; v < h.n; ++v)
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                base.add_edge(4 * v + i, 4 * v + j, 1);

    EdgeSelection copies;
    for (int64_t u = 0; u < h.n; ++u)
        for (const auto& [v, w] : h.adj[u]) {
            if (v < u) continue;
            for (int i = 0; i < 4; ++i) {
                base.add_edge(4 * u + i, 4 * v + i, w);
                copies.edges.push_back({4 * u + i, 4 * v + i, w});
            }
        }
    return subdivide(base, copies, ell);
}

std::string serialize(const Graph& g) {
    std::string s = "graph v1 " + std::to_string(g.n) + "\n";
    for (int64_t u = 0; u < g.n; ++u)
        for (const auto& [v, w] : g.adj[u])
            if (v > u)
                s += std::to_string(u) + " " + std::to_string(v) + " " + std::to_string(w) + "\n";
    return s;
}

static int64_t parse_int_field(const std::string& tok, int line_no) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + tok + "'", line_no);
    }
    if (pos != tok.size()) throw ParseError("trailing junk in '" + tok + "'", line_no);
    return v;
}

Graph deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input", 1);
    ++line_no;
    std::istringstream hdr(line);
    std::string magic, version, ntok, extra;
    hdr >> magic >> version >> ntok;
    if (magic != "graph" || version != "v1" || ntok.empty() || (hdr >> extra))
        throw ParseError("bad header, expected 'graph v1 <n>'", line_no);
    int64_t n = parse_int_field(ntok, line_no);
    if (n < 0) throw ParseError("negative vertex count", line_no);

    Graph g(n);
    std::pair<int64_t, int64_t> prev{-1, -1};
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw ParseError("blank line", line_no);
        }
        std::istringstream es(line);
        std::string ut, vt, wt;
        es >> ut >> vt >> wt;
        if (wt.empty() || (es >> extra))
            throw ParseError("expected 'u v w'", line_no);
        int64_t u = parse_int_field(ut, line_no);
        int64_t v = parse_int_field(vt, line_no);
        int64_t w = parse_int_field(wt, line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("vertex out of range", line_no);
        if (u >= v) throw ParseError("edges must satisfy u < v", line_no);
        if (w < 1) throw ParseError("weight must be positive", line_no);
        if (std::make_pair(u, v) <= prev)
            throw ParseError("edges must be sorted and distinct", line_no);
        prev = {u, v};
        g.add_edge(u, v, w);
    }
    return g;
}

Graph complete_graph(int64_t k) {
    if (k < 1) throw DomainError("complete graph needs k >= 1");
    Graph g(k);
    for (int64_t i = 0; i < k; ++i)
        for (int64_t j = i + 1; j < k; ++j) g.add_edge(i, j, 1);
    return g;
}

Graph cycle_graph(int64_t k) {
    if (k < 3) throw DomainError("cycle graph needs k >= 3");
    Graph g(k);
    for (int64_t i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k, 1);
    return g;
}

Graph petersen() {
    Graph g(10);
    for (int64_t i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5, 1);
        g.add_edge(i, i + 5, 1);
        g.add_edge(5 + i, 5 + (i + 2) % 5, 1);
    }
    return g;
}

} // namespace emlab
