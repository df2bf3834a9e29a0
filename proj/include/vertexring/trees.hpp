#pragma once

#include <string>
#include <vector>

#include "vertexring/axioms.hpp"

namespace vertexring {

// Unordered rooted tree with leaves labeled 1..n. Kept canonical: children
// sorted by their smallest leaf label.
class RootedTree {
public:
    static RootedTree leaf(int label);
    static RootedTree node(std::vector<RootedTree> children);
    static RootedTree corolla(int n);
    // "((1,2),3)"; a bare "1" is a leaf. Throws std::invalid_argument.
    static RootedTree parse(const std::string& text);

    bool is_leaf() const { return label_ > 0; }
    int label() const { return label_; }
    const std::vector<RootedTree>& children() const { return children_; }
    int num_leaves() const;
    int min_label() const;
    // Sorted leaf labels below this node.
    std::vector<int> cluster() const;

    // Leaf sets of internal nodes other than the root; each names the edge
    // above that node.
    std::vector<std::vector<int>> internal_edges() const;

    std::string render() const;

    friend bool operator==(const RootedTree&, const RootedTree&) = default;

private:
    void canonicalize();
    void check_labels() const;

    int label_ = 0;
    std::vector<RootedTree> children_;
};

// Attaches subtrees[i] at leaf i+1 of p; the labels of subtrees[i] are shifted
// past those of subtrees[0..i-1].
RootedTree graft(const RootedTree& p, const std::vector<RootedTree>& subtrees);

// Contracts the edge above the internal node whose leaf set is `cluster`.
RootedTree collapse(const RootedTree& p, const std::vector<int>& cluster);
// Same, with the node given by child positions from the root.
RootedTree collapse_path(const RootedTree& p, const std::vector<int>& path);

// All trees on n leaves whose internal nodes have at least two children.
std::vector<RootedTree> enumerate_trees(int n);

// Iterated-expansion data of a tree: every non-root internal node is a
// cluster whose points are close compared with the rest of its parent.
struct ExpansionShape {
    struct Cluster {
        std::vector<int> leaves;
        std::vector<int> parent_leaves;
    };
    int num_points = 0;
    std::vector<Cluster> clusters;

    bool is_rational() const { return clusters.empty(); }
    std::string render() const;
};

ExpansionShape shape_of(const RootedTree& p);

// For the composite Y(phi,x1)Y(phi,x2)phi (leaf 3 at the origin) and a
// 3-leaf tree: the rational value expanded in the tree's region against the
// iterated two-step evaluation. d = 1.
AxiomReport check_shape_coherence(const FreeFieldAlgebra& alg, const RootedTree& p, int cutoff);

// Grafting associativity and collapse checks over all trees with <= max_leaves
// leaves, plus shape coherence for every 3-leaf tree.
SuiteReport run_tree_suite(const FreeFieldAlgebra& alg, int cutoff, int max_leaves = 5);

} // namespace vertexring
