#include "treedist/tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "treedist/errors.hpp"

namespace treedist {

namespace {

std::string height_bits(double h) {
    if (h == 0.0) h = 0.0; // collapse -0
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(h)));
    return buf;
}

// Minimal reconstruction scratch: one entry per synthesized node.
struct ReconNode {
    double height = 0.0;
    std::vector<int> children;
};

struct Recon {
    std::vector<ReconNode> nodes;
    std::vector<int> final_roots; // one per eventual component, element order
};

Recon reconstruct(const PersistentSetRep& rep) {
    Recon r;
    const int n = static_cast<int>(rep.critical_times.size());
    if (n == 0) return r;
    std::vector<int> cur; // element -> node index
    cur.reserve(static_cast<size_t>(rep.critical_set_sizes[0]));
    for (int e = 0; e < rep.critical_set_sizes[0]; ++e) {
        r.nodes.push_back({rep.critical_times[0], {}});
        cur.push_back(static_cast<int>(r.nodes.size()) - 1);
    }
    for (int i = 0; i + 1 < n; ++i) {
        const auto& m = rep.maps[static_cast<size_t>(i)];
        const int next_size = rep.critical_set_sizes[static_cast<size_t>(i) + 1];
        std::vector<std::vector<int>> preimages(static_cast<size_t>(next_size));
        for (int e = 0; e < rep.critical_set_sizes[static_cast<size_t>(i)]; ++e)
            preimages[static_cast<size_t>(m[static_cast<size_t>(e)])].push_back(cur[static_cast<size_t>(e)]);
        std::vector<int> next(static_cast<size_t>(next_size), -1);
        for (int e = 0; e < next_size; ++e) {
            auto& pre = preimages[static_cast<size_t>(e)];
            if (pre.empty()) {
                r.nodes.push_back({rep.critical_times[static_cast<size_t>(i) + 1], {}});
                next[static_cast<size_t>(e)] = static_cast<int>(r.nodes.size()) - 1;
            } else if (pre.size() == 1) {
                next[static_cast<size_t>(e)] = pre[0];
            } else {
                r.nodes.push_back({rep.critical_times[static_cast<size_t>(i) + 1], pre});
                next[static_cast<size_t>(e)] = static_cast<int>(r.nodes.size()) - 1;
            }
        }
        cur = std::move(next);
    }
    r.final_roots = cur;
    return r;
}

std::string recon_code(const Recon& r, int v) {
    const ReconNode& n = r.nodes[static_cast<size_t>(v)];
    std::vector<std::string> child_codes;
    child_codes.reserve(n.children.size());
    for (int c : n.children) child_codes.push_back(recon_code(r, c));
    std::sort(child_codes.begin(), child_codes.end());
    std::string out = "(" + height_bits(n.height);
    for (auto& c : child_codes) out += c;
    out += ")";
    return out;
}

std::string code_of_rep(const PersistentSetRep& rep) {
    Recon r = reconstruct(rep);
    std::vector<std::string> codes;
    codes.reserve(r.final_roots.size());
    for (int root : r.final_roots) codes.push_back(recon_code(r, root));
    std::sort(codes.begin(), codes.end());
    std::string out;
    for (auto& c : codes) out += c;
    return out;
}

void sweep_tree(const MergeTree& tree, PersistentSetRep& rep_out,
                std::vector<std::vector<int>>& node_elements_out);

struct Dsu {
    std::vector<int> parent;
    std::vector<int> min_serial; // valid at roots

    explicit Dsu(size_t n) : parent(n, -1), min_serial(n, -1) {}

    void make(int v, int serial) {
        parent[static_cast<size_t>(v)] = v;
        min_serial[static_cast<size_t>(v)] = serial;
    }
    int find(int v) {
        int r = v;
        while (parent[static_cast<size_t>(r)] != r) r = parent[static_cast<size_t>(r)];
        while (parent[static_cast<size_t>(v)] != v) {
            int nxt = parent[static_cast<size_t>(v)];
            parent[static_cast<size_t>(v)] = r;
            v = nxt;
        }
        return r;
    }
    // Attaches b's class under a's root; keeps the smaller serial.
    int unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return ra;
        parent[static_cast<size_t>(rb)] = ra;
        min_serial[static_cast<size_t>(ra)] =
            std::min(min_serial[static_cast<size_t>(ra)], min_serial[static_cast<size_t>(rb)]);
        return ra;
    }
};

} // namespace

int PersistentSetRep::index_at(double t) const {
    auto it = std::upper_bound(critical_times.begin(), critical_times.end(), t);
    return static_cast<int>(it - critical_times.begin()) - 1;
}

int PersistentSetRep::index_at(double t, double tol) const { return index_at(t + tol); }

int PersistentSetRep::size_at(double t) const {
    int i = index_at(t);
    return i < 0 ? 0 : critical_set_sizes[static_cast<size_t>(i)];
}

int PersistentSetRep::evolve(int from, int elem, int to) const {
    for (int i = from; i < to; ++i) elem = maps[static_cast<size_t>(i)][static_cast<size_t>(elem)];
    return elem;
}

std::vector<Violation> validate(const TreeData& data) {
    std::vector<Violation> out;
    auto add = [&](const char* inv, std::string msg, std::vector<std::string> ids = {}) {
        out.push_back({inv, std::move(msg), std::move(ids)});
    };
    if (data.nodes.empty()) {
        add("nonempty", "a merge tree needs at least one node");
        return out;
    }
    std::unordered_map<std::string, int> index;
    bool ids_ok = true;
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i) {
        auto [it, fresh] = index.emplace(data.nodes[static_cast<size_t>(i)].id, i);
        (void)it;
        if (!fresh) {
            add("unique-ids", "duplicate node id", {data.nodes[static_cast<size_t>(i)].id});
            ids_ok = false;
        }
    }
    for (const auto& n : data.nodes)
        if (!std::isfinite(n.height)) add("finite-height", "height must be a finite real", {n.id});

    bool structure_ok = ids_ok;
    std::vector<int> parent(data.nodes.size(), -1);
    if (ids_ok) {
        for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i) {
            const auto& n = data.nodes[static_cast<size_t>(i)];
            for (const auto& cid : n.children) {
                auto it = index.find(cid);
                if (it == index.end()) {
                    add("known-children", "child id not present", {n.id, cid});
                    structure_ok = false;
                    continue;
                }
                int c = it->second;
                if (c == i) {
                    add("acyclic", "node lists itself as a child", {n.id});
                    structure_ok = false;
                    continue;
                }
                if (parent[static_cast<size_t>(c)] != -1) {
                    add("single-parent", "node has two parents", {cid});
                    structure_ok = false;
                    continue;
                }
                parent[static_cast<size_t>(c)] = i;
                if (n.height < data.nodes[static_cast<size_t>(c)].height)
                    add("height-order", "parent below child", {n.id, cid});
            }
        }
    }
    auto rit = index.find(data.root);
    if (rit == index.end()) {
        add("root-known", "root id not present", {data.root});
        return out;
    }
    if (!structure_ok) return out;
    int root = rit->second;
    if (parent[static_cast<size_t>(root)] != -1)
        add("single-root", "root has a parent", {data.root});
    // reachability (cycles off the root path show up as unreachable nodes)
    std::vector<char> seen(data.nodes.size(), 0);
    std::deque<int> queue{root};
    seen[static_cast<size_t>(root)] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& cid : data.nodes[static_cast<size_t>(v)].children) {
            int c = index.at(cid);
            if (!seen[static_cast<size_t>(c)]) {
                seen[static_cast<size_t>(c)] = 1;
                queue.push_back(c);
            }
        }
    }
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i)
        if (!seen[static_cast<size_t>(i)])
            add("connected", "node not reachable from root", {data.nodes[static_cast<size_t>(i)].id});
    return out;
}

MergeTree MergeTree::build(const TreeData& data) {
    auto violations = validate(data);
    if (!violations.empty()) {
        std::string msg = "invalid merge tree:";
        for (const auto& v : violations) msg += " [" + v.invariant + "] " + v.message + ";";
        throw InputError(msg);
    }

    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i)
        index.emplace(data.nodes[static_cast<size_t>(i)].id, i);
    int root = index.at(data.root);

    // Resolve 1-child chains: a non-root internal node with a single child is
    // spliced out; the root cap stays.
    std::vector<std::vector<int>> raw_children(data.nodes.size());
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i)
        for (const auto& cid : data.nodes[static_cast<size_t>(i)].children)
            raw_children[static_cast<size_t>(i)].push_back(index.at(cid));

    auto kept = [&](int v) {
        return v == root || raw_children[static_cast<size_t>(v)].size() != 1;
    };
    auto resolve = [&](int v) {
        while (!kept(v)) v = raw_children[static_cast<size_t>(v)][0];
        return v;
    };

    MergeTree tree;
    std::vector<int> new_index(data.nodes.size(), -1);
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i) {
        if (!kept(i)) continue;
        new_index[static_cast<size_t>(i)] = static_cast<int>(tree.nodes_.size());
        MergeNode n;
        n.id = data.nodes[static_cast<size_t>(i)].id;
        n.height = data.nodes[static_cast<size_t>(i)].height;
        if (n.height == 0.0) n.height = 0.0; // collapse -0
        tree.nodes_.push_back(std::move(n));
    }
    tree.root_ = new_index[static_cast<size_t>(root)];
    tree.children_.resize(tree.nodes_.size());
    tree.parents_.assign(tree.nodes_.size(), -1);
    for (int i = 0; i < static_cast<int>(data.nodes.size()); ++i) {
        if (!kept(i)) continue;
        int v = new_index[static_cast<size_t>(i)];
        for (int c : raw_children[static_cast<size_t>(i)]) {
            int rc = new_index[static_cast<size_t>(resolve(c))];
            tree.children_[static_cast<size_t>(v)].push_back(rc);
            tree.nodes_[static_cast<size_t>(v)].children.push_back(
                tree.nodes_[static_cast<size_t>(rc)].id);
            tree.parents_[static_cast<size_t>(rc)] = v;
        }
    }

    for (int i = 0; i < tree.node_count(); ++i)
        if (tree.children_[static_cast<size_t>(i)].empty()) tree.leaves_.push_back(i);
    std::sort(tree.leaves_.begin(), tree.leaves_.end(), [&](int a, int b) {
        double ha = tree.nodes_[static_cast<size_t>(a)].height;
        double hb = tree.nodes_[static_cast<size_t>(b)].height;
        return ha != hb ? ha < hb : a < b;
    });

    tree.subtree_min_serial_.assign(tree.nodes_.size(), -1);
    for (int s = 0; s < static_cast<int>(tree.leaves_.size()); ++s)
        tree.subtree_min_serial_[static_cast<size_t>(tree.leaves_[static_cast<size_t>(s)])] = s;
    auto fill_serial = [&](auto&& self, int v) -> int {
        int& slot = tree.subtree_min_serial_[static_cast<size_t>(v)];
        if (slot != -1) return slot;
        int best = -1;
        for (int c : tree.children_[static_cast<size_t>(v)]) {
            int s = self(self, c);
            if (best == -1 || s < best) best = s;
        }
        slot = best;
        return best;
    };
    fill_serial(fill_serial, tree.root_);

    sweep_tree(tree, tree.rep_, tree.node_elements_);
    tree.code_ = code_of_rep(tree.rep_);
    return tree;
}

std::optional<int> MergeTree::index_of(const std::string& id) const {
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[static_cast<size_t>(i)].id == id) return i;
    return std::nullopt;
}

double MergeTree::max_height() const {
    double h = nodes_[0].height;
    for (const auto& n : nodes_) h = std::max(h, n.height);
    return h;
}

TreeData MergeTree::to_data() const {
    TreeData d;
    d.nodes = nodes_;
    d.root = nodes_[static_cast<size_t>(root_)].id;
    return d;
}

namespace {

void sweep_tree(const MergeTree& tree, PersistentSetRep& rep_out,
                std::vector<std::vector<int>>& node_elements_out) {
    const int n = tree.node_count();
    std::vector<int> serial_of(static_cast<size_t>(n), -1);
    for (int s = 0; s < static_cast<int>(tree.leaves().size()); ++s)
        serial_of[static_cast<size_t>(tree.leaves()[static_cast<size_t>(s)])] = s;

    // Nodes grouped by exact height, children before parents inside a group.
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return tree.node(a).height < tree.node(b).height;
    });

    Dsu dsu(static_cast<size_t>(n));
    std::vector<char> processed(static_cast<size_t>(n), 0);
    std::unordered_set<int> roots; // DSU roots of live components

    std::vector<double> times;
    std::vector<int> sizes;
    std::vector<std::vector<int>> steps; // steps[i]: snapshot i-1 -> snapshot i
    std::vector<std::vector<int>> tables; // node -> element per snapshot
    std::vector<int> prev_snap;           // representative node per element

    size_t pos = 0;
    while (pos < order.size()) {
        double h = tree.node(order[pos]).height;
        std::vector<int> group;
        while (pos < order.size() && tree.node(order[pos]).height == h) {
            group.push_back(order[pos]);
            ++pos;
        }
        // leaves first, then internal nodes whose children are all processed
        std::deque<int> ready;
        std::vector<int> waiting;
        for (int v : group) {
            if (tree.is_leaf(v)) ready.push_back(v);
            else waiting.push_back(v);
        }
        auto deps_done = [&](int v) {
            for (int c : tree.child_indices(v))
                if (!processed[static_cast<size_t>(c)]) return false;
            return true;
        };
        while (!ready.empty() || !waiting.empty()) {
            if (ready.empty()) {
                bool advanced = false;
                for (auto it = waiting.begin(); it != waiting.end();) {
                    if (deps_done(*it)) {
                        ready.push_back(*it);
                        it = waiting.erase(it);
                        advanced = true;
                    } else {
                        ++it;
                    }
                }
                if (!advanced) break; // unreachable for validated trees
            }
            int v = ready.front();
            ready.pop_front();
            if (tree.is_leaf(v)) {
                dsu.make(v, serial_of[static_cast<size_t>(v)]);
                roots.insert(v);
            } else {
                const auto& kids = tree.child_indices(v);
                int r = dsu.find(kids[0]);
                for (size_t k = 1; k < kids.size(); ++k) {
                    int other = dsu.find(kids[k]);
                    if (other != r) roots.erase(other);
                    r = dsu.unite(r, other);
                }
                dsu.parent[static_cast<size_t>(v)] = r;
            }
            processed[static_cast<size_t>(v)] = 1;
        }
        std::vector<int> snap(roots.begin(), roots.end());
        std::sort(snap.begin(), snap.end(), [&](int a, int b) {
            return dsu.min_serial[static_cast<size_t>(a)] < dsu.min_serial[static_cast<size_t>(b)];
        });
        if (snap.empty()) continue;
        std::unordered_map<int, int> elem_index;
        for (int e = 0; e < static_cast<int>(snap.size()); ++e)
            elem_index.emplace(snap[static_cast<size_t>(e)], e);
        if (!times.empty()) {
            // step map has to be taken now, before later unions move the roots
            std::vector<int> step(prev_snap.size());
            for (size_t e = 0; e < prev_snap.size(); ++e)
                step[e] = elem_index.at(dsu.find(prev_snap[e]));
            steps.push_back(std::move(step));
        }
        std::vector<int> table(static_cast<size_t>(n), -1);
        for (int v = 0; v < n; ++v)
            if (processed[static_cast<size_t>(v)]) table[static_cast<size_t>(v)] = elem_index.at(dsu.find(v));
        tables.push_back(std::move(table));
        times.push_back(h);
        sizes.push_back(static_cast<int>(snap.size()));
        prev_snap = std::move(snap);
    }

    // Minimality: keep a snapshot only when something appears or merges;
    // dropped steps are bijections and compose away.
    PersistentSetRep rep;
    node_elements_out.clear();
    std::vector<int> carry; // composite map from the last kept snapshot
    for (size_t i = 0; i < times.size(); ++i) {
        if (rep.critical_times.empty()) {
            rep.critical_times.push_back(times[i]);
            rep.critical_set_sizes.push_back(sizes[i]);
            node_elements_out.push_back(tables[i]);
            carry.resize(static_cast<size_t>(sizes[i]));
            for (int e = 0; e < sizes[i]; ++e) carry[static_cast<size_t>(e)] = e;
            continue;
        }
        const auto& step = steps[i - 1];
        std::vector<char> hit(static_cast<size_t>(sizes[i]), 0);
        bool injective = true;
        for (int img : step) {
            if (hit[static_cast<size_t>(img)]) injective = false;
            hit[static_cast<size_t>(img)] = 1;
        }
        bool births = false;
        for (char c : hit)
            if (!c) births = true;
        for (auto& e : carry) e = step[static_cast<size_t>(e)];
        if (!injective || births) {
            rep.critical_times.push_back(times[i]);
            rep.critical_set_sizes.push_back(sizes[i]);
            rep.maps.push_back(carry);
            node_elements_out.push_back(tables[i]);
            carry.resize(static_cast<size_t>(sizes[i]));
            for (int e = 0; e < sizes[i]; ++e) carry[static_cast<size_t>(e)] = e;
        }
    }
    rep_out = std::move(rep);
}

} // namespace

PersistentSetRep to_persistent_set(const MergeTree& tree) {
    PersistentSetRep rep;
    std::vector<std::vector<int>> tables;
    sweep_tree(tree, rep, tables);
    return rep;
}

int MergeTree::element_at(int node, double t, double tol) const {
    int q = rep_.index_at(t, tol);
    if (q < 0) throw InputError("element_at: tree is empty at that time");
    if (nodes_[static_cast<size_t>(node)].height > t + tol)
        throw InputError("element_at: node not alive at that time");
    double sq = rep_.critical_times[static_cast<size_t>(q)];
    int v = node;
    while (node_elements_[static_cast<size_t>(q)][static_cast<size_t>(v)] == -1) {
        // a node missing from the snapshot sits on a branch born strictly
        // between critical times and swallowed instantly
        int eldest_leaf = leaves_[static_cast<size_t>(subtree_min_serial_[static_cast<size_t>(v)])];
        if (nodes_[static_cast<size_t>(eldest_leaf)].height <= sq) {
            int best = -1;
            for (int c : children_[static_cast<size_t>(v)]) {
                if (best == -1 || subtree_min_serial_[static_cast<size_t>(c)] <
                                      subtree_min_serial_[static_cast<size_t>(best)])
                    best = c;
            }
            v = best; // descend toward the oldest branch
        } else {
            v = parents_[static_cast<size_t>(v)]; // whole subtree too young: escape up
            if (v == -1) throw InputError("element_at: unresolvable node");
        }
    }
    return node_elements_[static_cast<size_t>(q)][static_cast<size_t>(v)];
}

MergeTree from_persistent_set(const PersistentSetRep& rep) {
    if (rep.critical_times.empty())
        throw InputError("empty persistent set does not define a merge tree");
    if (rep.critical_set_sizes.back() != 1)
        throw InputError("persistent set ends with more than one component");
    MergeForest f = forest_from_persistent_set(rep);
    return std::move(f.trees[0]);
}

MergeForest forest_from_persistent_set(const PersistentSetRep& rep) {
    MergeForest forest;
    if (rep.critical_times.empty()) return forest;
    Recon r = reconstruct(rep);
    // membership of each recon node in its final tree
    std::vector<int> tree_of(r.nodes.size(), -1);
    for (size_t t = 0; t < r.final_roots.size(); ++t) {
        std::vector<int> stack{r.final_roots[t]};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            tree_of[static_cast<size_t>(v)] = static_cast<int>(t);
            for (int c : r.nodes[static_cast<size_t>(v)].children) stack.push_back(c);
        }
    }
    // nodes are emitted in creation order so that leaf serial order follows
    // element order, keeping the rebuilt tree's persistent set label-aligned
    // with the input
    for (size_t t = 0; t < r.final_roots.size(); ++t) {
        TreeData data;
        for (int v = 0; v < static_cast<int>(r.nodes.size()); ++v) {
            if (tree_of[static_cast<size_t>(v)] != static_cast<int>(t)) continue;
            MergeNode node;
            node.id = "n" + std::to_string(v);
            node.height = r.nodes[static_cast<size_t>(v)].height;
            for (int c : r.nodes[static_cast<size_t>(v)].children)
                node.children.push_back("n" + std::to_string(c));
            data.nodes.push_back(std::move(node));
        }
        data.root = "n" + std::to_string(r.final_roots[t]);
        forest.trees.push_back(MergeTree::build(data));
    }
    return forest;
}

std::vector<int> evolution_map(const PersistentSetRep& rep, double s, double t) {
    if (s > t) throw InputError("evolution map needs s <= t");
    int i = rep.index_at(s);
    if (i < 0) return {};
    int j = rep.index_at(t);
    std::vector<int> m(static_cast<size_t>(rep.critical_set_sizes[static_cast<size_t>(i)]));
    for (int e = 0; e < static_cast<int>(m.size()); ++e)
        m[static_cast<size_t>(e)] = rep.evolve(i, e, j);
    return m;
}

int lca_index(const MergeTree& tree, int u, int v) {
    std::unordered_set<int> anc;
    for (int x = u; x != -1; x = tree.parent(x)) anc.insert(x);
    for (int y = v; y != -1; y = tree.parent(y))
        if (anc.count(y)) return y;
    return tree.root(); // unreachable for a valid tree
}

std::pair<std::string, double> lca(const MergeTree& tree, const std::string& u,
                                   const std::string& v) {
    auto iu = tree.index_of(u);
    auto iv = tree.index_of(v);
    if (!iu || !iv) throw InputError("lca: unknown node id");
    int a = lca_index(tree, *iu, *iv);
    return {tree.node(a).id, tree.node(a).height};
}

bool is_isomorphic(const MergeTree& a, const MergeTree& b) {
    return a.canonical_code() == b.canonical_code();
}

int component_count_at(const MergeTree& tree, double t) {
    return tree.persistent_set().size_at(t);
}

} // namespace treedist
