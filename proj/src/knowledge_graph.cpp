#include "kgx/knowledge_graph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <istream>
#include <string>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

std::int64_t parse_id(std::string_view field, std::string_view source, std::size_t line) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw ParseError(std::string(source) + ":" + std::to_string(line) +
                         ": invalid id '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

bool skippable(std::string_view line) {
    return line.empty() || line.front() == '#';
}

std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool sorted_contains(std::span<const ArticleId> ids, ArticleId x) {
    return std::binary_search(ids.begin(), ids.end(), x);
}

} // namespace

void PathScratch::ensure(std::size_t n) {
    if (mark_.size() < n) {
        mark_.assign(n, 0);
        dist_.assign(n, -1);
        epoch_ = 0;
    }
}

KnowledgeGraph KnowledgeGraph::load(std::istream& nodes, std::istream& edges,
                                    std::string_view nodes_name,
                                    std::string_view edges_name) {
    std::vector<NodeRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(nodes, line)) {
        ++line_no;
        std::string_view view = chomp(line);
        if (skippable(view)) continue;
        auto fields = split_tabs(view);
        if (fields.size() != 3) {
            throw ParseError(std::string(nodes_name) + ":" + std::to_string(line_no) +
                             ": expected 3 tab-separated fields, got " +
                             std::to_string(fields.size()));
        }
        NodeRecord rec;
        rec.external_id = parse_id(fields[0], nodes_name, line_no);
        rec.title = std::string(fields[1]);
        if (fields[2] != "-") {
            rec.redirect_target = parse_id(fields[2], nodes_name, line_no);
        }
        if (tokenize(rec.title).empty()) {
            throw ParseError(std::string(nodes_name) + ":" + std::to_string(line_no) +
                             ": title has no tokens");
        }
        records.push_back(std::move(rec));
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> edge_pairs;
    line_no = 0;
    while (std::getline(edges, line)) {
        ++line_no;
        std::string_view view = chomp(line);
        if (skippable(view)) continue;
        auto fields = split_tabs(view);
        if (fields.size() != 2) {
            throw ParseError(std::string(edges_name) + ":" + std::to_string(line_no) +
                             ": expected 2 tab-separated fields, got " +
                             std::to_string(fields.size()));
        }
        edge_pairs.emplace_back(parse_id(fields[0], edges_name, line_no),
                                parse_id(fields[1], edges_name, line_no));
    }
    return from_tables(std::move(records), std::move(edge_pairs));
}

KnowledgeGraph KnowledgeGraph::from_tables(
    std::vector<NodeRecord> nodes,
    std::vector<std::pair<std::int64_t, std::int64_t>> edges) {
    std::sort(nodes.begin(), nodes.end(),
              [](const NodeRecord& a, const NodeRecord& b) {
                  return a.external_id < b.external_id;
              });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].external_id == nodes[i - 1].external_id) {
            throw IntegrityError("duplicate article id " +
                                 std::to_string(nodes[i].external_id));
        }
    }

    std::unordered_map<std::int64_t, ArticleId> index;
    index.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index.emplace(nodes[i].external_id, ArticleId(i));
    }

    // Collapse redirect chains to their terminal concept; cycles are fatal.
    std::vector<ArticleId> target(nodes.size(), 0);
    std::vector<int> state(nodes.size(), 0); // 0 new, 1 on stack, 2 done
    auto resolve = [&](ArticleId start) {
        std::vector<ArticleId> chain;
        ArticleId cur = start;
        while (true) {
            if (!nodes[cur].redirect_target) {
                target[cur] = cur;
                state[cur] = 2;
                break;
            }
            if (state[cur] == 2) break;
            if (state[cur] == 1) {
                std::string cycle;
                bool in_cycle = false;
                for (ArticleId id : chain) {
                    if (id == cur) in_cycle = true;
                    if (!in_cycle) continue;
                    if (!cycle.empty()) cycle += " -> ";
                    cycle += std::to_string(nodes[id].external_id);
                }
                cycle += " -> " + std::to_string(nodes[cur].external_id);
                throw IntegrityError("redirect cycle: " + cycle);
            }
            state[cur] = 1;
            chain.push_back(cur);
            auto it = index.find(*nodes[cur].redirect_target);
            if (it == index.end()) {
                throw IntegrityError("redirect target " +
                                     std::to_string(*nodes[cur].redirect_target) +
                                     " of article " +
                                     std::to_string(nodes[cur].external_id) +
                                     " does not exist");
            }
            cur = it->second;
        }
        for (ArticleId id : chain) {
            target[id] = target[cur];
            state[id] = 2;
        }
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (state[i] != 2) resolve(ArticleId(i));
    }

    std::vector<Article> articles;
    articles.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto phrase = Phrase::parse(nodes[i].title);
        if (!phrase) throw IntegrityError("article title has no tokens");
        articles.push_back(Article{nodes[i].external_id, std::move(*phrase),
                                   nodes[i].redirect_target.has_value(),
                                   target[i]});
    }

    std::vector<std::pair<ArticleId, ArticleId>> mapped;
    mapped.reserve(edges.size());
    for (const auto& [src_ext, dst_ext] : edges) {
        auto src_it = index.find(src_ext);
        auto dst_it = index.find(dst_ext);
        if (src_it == index.end() || dst_it == index.end()) {
            throw IntegrityError("edge " + std::to_string(src_ext) + " -> " +
                                 std::to_string(dst_ext) +
                                 " references an unknown article id");
        }
        ArticleId src = target[src_it->second];
        ArticleId dst = target[dst_it->second];
        if (src == dst) continue; // self loop after redirect remapping
        mapped.emplace_back(src, dst);
    }

    KnowledgeGraph g;
    g.external_index_ = std::move(index);
    g.build(std::move(articles), std::move(mapped));
    return g;
}

void KnowledgeGraph::build(std::vector<Article> articles,
                           std::vector<std::pair<ArticleId, ArticleId>> edges) {
    articles_ = std::move(articles);
    const std::size_t n = articles_.size();

    title_index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = title_index_.emplace(articles_[i].title.text(), ArticleId(i));
        if (!inserted) {
            throw IntegrityError("duplicate title after normalization: '" +
                                 articles_[i].title.text() + "'");
        }
        for (const Term& t : articles_[i].title.terms()) {
            term_postings_[t].push_back(ArticleId(i));
        }
        if (!articles_[i].is_redirect) {
            concepts_.push_back(ArticleId(i));
            ++concept_count_;
        }
    }
    for (auto& [term, ids] : term_postings_) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto build_csr = [n](const std::vector<std::pair<ArticleId, ArticleId>>& pairs,
                         std::vector<std::size_t>& off, std::vector<ArticleId>& adj) {
        off.assign(n + 1, 0);
        for (const auto& [u, v] : pairs) off[u + 1]++;
        for (std::size_t i = 1; i <= n; ++i) off[i] += off[i - 1];
        adj.resize(pairs.size());
        std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
        for (const auto& [u, v] : pairs) adj[cursor[u]++] = v;
    };

    build_csr(edges, out_off_, out_adj_);

    std::vector<std::pair<ArticleId, ArticleId>> reversed;
    reversed.reserve(edges.size());
    for (const auto& [u, v] : edges) reversed.emplace_back(v, u);
    std::sort(reversed.begin(), reversed.end());
    build_csr(reversed, in_off_, in_adj_);

    std::vector<std::pair<ArticleId, ArticleId>> und;
    und.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        und.emplace_back(u, v);
        und.emplace_back(v, u);
    }
    std::sort(und.begin(), und.end());
    und.erase(std::unique(und.begin(), und.end()), und.end());
    build_csr(und, und_off_, und_adj_);

    std::vector<std::pair<ArticleId, ArticleId>> red_pairs;
    for (std::size_t i = 0; i < n; ++i) {
        if (articles_[i].is_redirect) {
            red_pairs.emplace_back(articles_[i].redirect_target, ArticleId(i));
        }
    }
    std::sort(red_pairs.begin(), red_pairs.end());
    build_csr(red_pairs, red_off_, red_ids_);
}

std::optional<ArticleId> KnowledgeGraph::find_external(std::int64_t external_id) const {
    auto it = external_index_.find(external_id);
    if (it == external_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArticleId> KnowledgeGraph::resolve_title(const Phrase& title) const {
    auto it = title_index_.find(title.text());
    if (it == title_index_.end()) return std::nullopt;
    const Article& a = articles_[it->second];
    return a.is_redirect ? a.redirect_target : it->second;
}

void KnowledgeGraph::require_concept(ArticleId id, const char* op) const {
    if (id >= articles_.size()) throw ContractError(std::string(op) + ": article id out of range");
    if (articles_[id].is_redirect) {
        throw ContractError(std::string(op) + ": article '" + articles_[id].title.text() +
                            "' is a redirect");
    }
}

std::span<const ArticleId> KnowledgeGraph::redirect_ids(ArticleId id) const {
    require_concept(id, "redirects_of");
    return {red_ids_.data() + red_off_[id], red_off_[id + 1] - red_off_[id]};
}

std::vector<Phrase> KnowledgeGraph::redirects_of(ArticleId id) const {
    std::vector<Phrase> titles;
    for (ArticleId r : redirect_ids(id)) titles.push_back(articles_[r].title);
    return titles;
}

std::span<const ArticleId> KnowledgeGraph::out_neighbors(ArticleId id) const {
    return {out_adj_.data() + out_off_[id], out_off_[id + 1] - out_off_[id]};
}

std::span<const ArticleId> KnowledgeGraph::in_neighbors(ArticleId id) const {
    return {in_adj_.data() + in_off_[id], in_off_[id + 1] - in_off_[id]};
}

std::span<const ArticleId> KnowledgeGraph::und_neighbors(ArticleId id) const {
    return {und_adj_.data() + und_off_[id], und_off_[id + 1] - und_off_[id]};
}

std::span<const ArticleId> KnowledgeGraph::neighbors(ArticleId id, Direction dir) const {
    require_concept(id, "neighbors");
    switch (dir) {
        case Direction::out: return out_neighbors(id);
        case Direction::in: return in_neighbors(id);
        case Direction::both: return und_neighbors(id);
    }
    return {};
}

std::vector<ConceptPath> KnowledgeGraph::shortest_paths(ArticleId source,
                                                        std::span<const ArticleId> targets,
                                                        int max_hops,
                                                        PathScratch* scratch) const {
    require_concept(source, "shortest_paths");
    if (max_hops < 1) throw ContractError("shortest_paths: max_hops must be >= 1");

    PathScratch local;
    PathScratch& s = scratch ? *scratch : local;
    s.ensure(articles_.size());
    ++s.epoch_;
    const std::uint32_t epoch = s.epoch_;

    std::vector<ArticleId> target_sorted(targets.begin(), targets.end());
    std::sort(target_sorted.begin(), target_sorted.end());
    target_sorted.erase(std::unique(target_sorted.begin(), target_sorted.end()),
                        target_sorted.end());

    auto is_target = [&](ArticleId v) {
        return v != source && sorted_contains(target_sorted, v);
    };

    s.mark_[source] = epoch;
    s.dist_[source] = 0;
    s.frontier_.clear();
    s.frontier_.push_back(source);

    int depth = 0;
    int found_depth = -1;
    std::vector<ArticleId> hit_targets;
    while (!s.frontier_.empty() && depth < max_hops && found_depth < 0) {
        ++depth;
        s.next_.clear();
        for (ArticleId u : s.frontier_) {
            for (ArticleId v : out_neighbors(u)) {
                if (s.mark_[v] == epoch) continue;
                s.mark_[v] = epoch;
                s.dist_[v] = depth;
                s.next_.push_back(v);
                if (is_target(v)) {
                    found_depth = depth;
                    hit_targets.push_back(v);
                }
            }
        }
        std::swap(s.frontier_, s.next_);
    }
    if (found_depth < 0) return {};

    std::sort(hit_targets.begin(), hit_targets.end());

    // Walk shortest-path predecessors backwards from each reached target.
    std::vector<ConceptPath> paths;
    std::vector<ArticleId> stack;
    auto expand = [&](auto&& self, ArticleId v, int d) -> void {
        stack.push_back(v);
        if (d == 0) {
            ConceptPath p;
            p.articles.assign(stack.rbegin(), stack.rend());
            paths.push_back(std::move(p));
        } else {
            for (ArticleId u : in_neighbors(v)) {
                if (s.mark_[u] == epoch && s.dist_[u] == d - 1) self(self, u, d - 1);
            }
        }
        stack.pop_back();
    };
    for (ArticleId t : hit_targets) expand(expand, t, found_depth);

    std::sort(paths.begin(), paths.end(),
              [](const ConceptPath& a, const ConceptPath& b) {
                  return a.articles < b.articles;
              });
    return paths;
}

TriangleStats KnowledgeGraph::triangle_stats(ArticleId x, std::span<const ArticleId> s) const {
    require_concept(x, "triangle_stats");
    TriangleStats stats;
    auto nx = und_neighbors(x);
    for (ArticleId u : nx) {
        if (u == x || !sorted_contains(s, u)) continue;
        auto nu = und_neighbors(u);
        bool closes = false;
        auto a = nx.begin();
        auto b = nu.begin();
        while (a != nx.end() && b != nu.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ArticleId w = *a;
                if (w != x && w != u) {
                    closes = true;
                    if (w > u && sorted_contains(s, w)) ++stats.triangles;
                }
                ++a;
                ++b;
            }
        }
        if (closes) ++stats.closing_vertices;
    }
    return stats;
}

TriangleStats KnowledgeGraph::triangle_totals(ArticleId x) const {
    require_concept(x, "triangle_totals");
    TriangleStats stats;
    std::uint64_t twice_triangles = 0;
    auto nx = und_neighbors(x);
    for (ArticleId u : nx) {
        auto nu = und_neighbors(u);
        std::uint64_t common = 0;
        auto a = nx.begin();
        auto b = nu.begin();
        while (a != nx.end() && b != nu.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                if (*a != x && *a != u) ++common;
                ++a;
                ++b;
            }
        }
        twice_triangles += common;
        if (common > 0) ++stats.closing_vertices;
    }
    stats.triangles = twice_triangles / 2;
    return stats;
}

std::span<const ArticleId> KnowledgeGraph::articles_with_term(const Term& term) const {
    auto it = term_postings_.find(term);
    if (it == term_postings_.end()) return {};
    return {it->second.data(), it->second.size()};
}

std::vector<std::pair<std::int64_t, std::int64_t>> KnowledgeGraph::edge_list() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(out_adj_.size());
    for (ArticleId u = 0; u < articles_.size(); ++u) {
        for (ArticleId v : out_neighbors(u)) {
            out.emplace_back(articles_[u].external_id, articles_[v].external_id);
        }
    }
    return out;
}

} // namespace kgx
