#pragma once

#include <optional>
#include <string>
#include <vector>

namespace treedist {

// One node of a height-labeled rooted tree. Leaves have empty child lists;
// the root may be a formal 1-child cap over a single strand.
struct MergeNode {
    std::string id;
    double height = 0.0;
    std::vector<std::string> children;
};

// Raw node soup, e.g. straight from a file. Not validated, not normalized.
struct TreeData {
    std::vector<MergeNode> nodes;
    std::string root;
};

struct Violation {
    std::string invariant; // short code, e.g. "height-order"
    std::string message;
    std::vector<std::string> node_ids;
};

// Checks the tree invariants on raw data. Empty result iff MergeTree::build
// accepts the input. Single-child internal nodes are not violations; they are
// normalized away on construction.
std::vector<Violation> validate(const TreeData& data);

// A constructible persistent set: strictly increasing critical times, the
// size of each critical set, and the transition map between consecutive ones.
// Element e of critical set i maps to maps[i][e] in critical set i+1.
// Minimality holds: every critical time creates elements or merges them.
struct PersistentSetRep {
    std::vector<double> critical_times;
    std::vector<int> critical_set_sizes;
    std::vector<std::vector<int>> maps; // size = (#times - 1)

    int index_at(double t) const;                         // last i with s_i <= t, -1 if none
    int index_at(double t, double tol) const;             // last i with s_i <= t + tol
    int size_at(double t) const;
    // Composite map applied to element `elem` of critical set `from`.
    int evolve(int from, int elem, int to) const;
};

class MergeTree {
public:
    // Validates, normalizes away 1-child chain nodes (root cap kept), and
    // precomputes the persistent set. Throws InputError when validate() is
    // nonempty.
    static MergeTree build(const TreeData& data);

    const std::vector<MergeNode>& nodes() const { return nodes_; }
    const MergeNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    int root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int parent(int i) const { return parents_[static_cast<size_t>(i)]; } // -1 for root
    const std::vector<int>& child_indices(int i) const { return children_[static_cast<size_t>(i)]; }
    bool is_leaf(int i) const { return children_[static_cast<size_t>(i)].empty(); }
    std::optional<int> index_of(const std::string& id) const;

    // Leaves in sweep order: ascending (height, construction index).
    const std::vector<int>& leaves() const { return leaves_; }
    double max_height() const;

    const PersistentSetRep& persistent_set() const { return rep_; }
    const std::string& canonical_code() const { return code_; }

    // Element of the critical set at time t whose component contains `node`.
    // Handles nodes born strictly between critical times (instantly merged
    // branches). Throws when the node is not alive by t + tol.
    int element_at(int node, double t, double tol = 0.0) const;

    TreeData to_data() const;

private:
    MergeTree() = default;

    std::vector<MergeNode> nodes_;
    std::vector<int> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> leaves_;
    std::vector<int> subtree_min_serial_;
    int root_ = -1;
    PersistentSetRep rep_;
    // node_elements_[q][v] = element of critical set q holding node v, or -1
    // when v is not processed by time s_q
    std::vector<std::vector<int>> node_elements_;
    std::string code_;
};

struct MergeForest {
    std::vector<MergeTree> trees;
};

PersistentSetRep to_persistent_set(const MergeTree& tree);

// Rebuilds the minimal height-labeled tree presenting a persistent set whose
// final critical set is a singleton. Node ids are synthesized.
MergeTree from_persistent_set(const PersistentSetRep& rep);

// Per eventual component; empty rep gives an empty forest.
MergeForest forest_from_persistent_set(const PersistentSetRep& rep);

// Composite map M(s <= t) as a vector over the elements of M(s); empty when
// M(s) is empty. Throws InputError when s > t.
std::vector<int> evolution_map(const PersistentSetRep& rep, double s, double t);

// Least common ancestor in the stored tree structure.
std::pair<std::string, double> lca(const MergeTree& tree, const std::string& u,
                                   const std::string& v);
int lca_index(const MergeTree& tree, int u, int v);

// Natural isomorphism of the underlying persistent sets (ids ignored,
// heights exact).
bool is_isomorphic(const MergeTree& a, const MergeTree& b);

int component_count_at(const MergeTree& tree, double t);

} // namespace treedist
