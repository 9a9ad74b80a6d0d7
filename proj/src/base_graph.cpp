#include "liftspectra/base_graph.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <queue>
#include <sstream>
#include <utility>

namespace liftspectra {

namespace {

std::vector<std::vector<std::uint32_t>> neighbor_lists(const BaseGraph& g) {
    std::vector<std::vector<std::uint32_t>> adj(g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue; // loops do not affect traversal
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

} // namespace

BaseGraph::BaseGraph(std::uint32_t m, std::uint32_t d, std::vector<Edge> edges)
    : m_(m), d_(d), edges_(std::move(edges)) {
    if (m_ < 1) throw InputError("base graph needs at least one vertex");
    if (d_ < 1) throw InputError("base graph degree must be at least 1");
    std::vector<std::uint32_t> degree(m_, 0);
    for (Edge& e : edges_) {
        if (e.u >= m_ || e.v >= m_)
            throw InputError("edge endpoint out of range [0," + std::to_string(m_) + ")");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.is_loop()) {
            degree[e.u] += 2;
            ++loops_;
        } else {
            ++degree[e.u];
            ++degree[e.v];
        }
    }
    for (std::uint32_t v = 0; v < m_; ++v)
        if (degree[v] != d_)
            throw InputError("vertex " + std::to_string(v) + " has degree " +
                             std::to_string(degree[v]) + ", expected " + std::to_string(d_));
}

bool BaseGraph::is_connected() const {
    const auto adj = neighbor_lists(*this);
    std::vector<bool> seen(m_, false);
    std::queue<std::uint32_t> todo;
    todo.push(0);
    seen[0] = true;
    std::uint32_t reached = 1;
    while (!todo.empty()) {
        const std::uint32_t v = todo.front();
        todo.pop();
        for (std::uint32_t w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push(w);
            }
    }
    return reached == m_;
}

bool BaseGraph::is_simple() const {
    if (loops_ > 0) return false;
    auto sorted = sorted_edges();
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool BaseGraph::is_bipartite() const {
    if (loops_ > 0) return false; // a loop is an odd closed walk
    const auto adj = neighbor_lists(*this);
    std::vector<int> color(m_, -1);
    for (std::uint32_t start = 0; start < m_; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<std::uint32_t> todo;
        todo.push(start);
        while (!todo.empty()) {
            const std::uint32_t v = todo.front();
            todo.pop();
            for (std::uint32_t w : adj[v]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    todo.push(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<Edge> BaseGraph::sorted_edges() const {
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Edge& a, const Edge& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
    return sorted;
}

ValidationReport validate(const BaseGraph& g) {
    ValidationReport report;
    std::vector<std::uint32_t> degree(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) degree[e.u] += 2;
        else {
            ++degree[e.u];
            ++degree[e.v];
        }
    }
    report.regular = std::all_of(degree.begin(), degree.end(),
                                 [&](std::uint32_t d) { return d == degree[0]; });
    report.degree = degree.empty() ? 0 : degree[0];
    report.connected = g.is_connected();
    report.simple = g.is_simple();
    report.bipartite = g.is_bipartite();
    return report;
}

BaseGraph k4() { return complete(4); }

BaseGraph petersen() {
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
        edges.push_back({i, 5 + i});
    }
    return BaseGraph(10, 3, std::move(edges));
}

BaseGraph dodecahedral() {
    // Generalized Petersen graph GP(10,2): outer 10-cycle, inner vertices
    // joined at step 2, spokes between them.
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < 10; ++i) {
        edges.push_back({i, (i + 1) % 10});
        edges.push_back({10 + i, 10 + (i + 2) % 10});
        edges.push_back({i, 10 + i});
    }
    return BaseGraph(20, 3, std::move(edges));
}

BaseGraph complete(std::uint32_t k) {
    if (k < 2) throw InputError("complete(k) needs k >= 2");
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < k; ++u)
        for (std::uint32_t v = u + 1; v < k; ++v) edges.push_back({u, v});
    return BaseGraph(k, k - 1, std::move(edges));
}

BaseGraph cycle(std::uint32_t m) {
    if (m < 3) throw InputError("cycle(m) needs m >= 3");
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
    return BaseGraph(m, 2, std::move(edges));
}

BaseGraph bouquet(std::uint32_t loop_count) {
    if (loop_count < 1) throw InputError("bouquet(loop_count) needs loop_count >= 1");
    std::vector<Edge> edges(loop_count, Edge{0, 0});
    return BaseGraph(1, 2 * loop_count, std::move(edges));
}

namespace {

// "name" or "name(param)"
std::pair<std::string, std::optional<std::uint32_t>> split_catalog_spec(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return {spec, std::nullopt};
    if (spec.back() != ')') throw InputError("malformed catalog spec: " + spec);
    const std::string name = spec.substr(0, open);
    const std::string arg = spec.substr(open + 1, spec.size() - open - 2);
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
        throw InputError("bad catalog parameter in: " + spec);
    return {name, value};
}

} // namespace

BaseGraph catalog(const std::string& spec) {
    const auto [name, param] = split_catalog_spec(spec);
    if (name == "k4" && !param) return k4();
    if (name == "petersen" && !param) return petersen();
    if (name == "dodecahedral" && !param) return dodecahedral();
    if (name == "complete" && param) return complete(*param);
    if (name == "cycle" && param) return cycle(*param);
    if (name == "bouquet" && param) return bouquet(*param);
    throw InputError("unknown catalog graph: " + spec);
}

BaseGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::uint32_t> m, d;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        if (!m) {
            std::string mtok, dtok;
            if (!(fields >> mtok >> dtok)) {
                if (mtok.empty()) continue; // leading blank line
                throw InputError("line " + std::to_string(lineno) + ": expected header m=<int> d=<int>");
            }
            std::string trailing;
            if (mtok.rfind("m=", 0) != 0 || dtok.rfind("d=", 0) != 0 || (fields >> trailing))
                throw InputError("line " + std::to_string(lineno) + ": expected header m=<int> d=<int>");
            try {
                m = static_cast<std::uint32_t>(std::stoul(mtok.substr(2)));
                d = static_cast<std::uint32_t>(std::stoul(dtok.substr(2)));
            } catch (const std::exception&) {
                throw InputError("line " + std::to_string(lineno) + ": bad header values");
            }
            continue;
        }
        long long u, v;
        if (!(fields >> u)) continue; // blank or comment-only line
        std::string trailing;
        if (!(fields >> v) || (fields >> trailing))
            throw InputError("line " + std::to_string(lineno) + ": expected `u v`");
        if (u < 0 || v < 0 || u >= static_cast<long long>(*m) || v >= static_cast<long long>(*m))
            throw InputError("line " + std::to_string(lineno) + ": endpoint out of range");
        edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    }
    if (!m) throw InputError("missing header m=<int> d=<int>");
    return BaseGraph(*m, *d, std::move(edges)); // degree mismatch rejected here
}

std::string serialize_edge_list(const BaseGraph& g) {
    std::ostringstream out;
    out << "m=" << g.vertex_count() << " d=" << g.degree() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

} // namespace liftspectra
