#pragma once

/**
 * @file
 *
 * From fuzzy relations to Hasse diagrams.
 *
 * preorder_of() cuts a relation and completes it to a preorder; quotient()
 * collapses mutually related elements into classes; transitive_reduction()
 * keeps only cover edges; levels() numbers classes by longest cover path
 * from the maximal classes. Class i sits above class j when the preorder
 * relates a member of i to a member of j.
 *
 * Everything here is deterministic: classes are ordered by their first
 * member in input order, members keep input order, covers are sorted.
 */

#include "fuzzyrel/format.hpp"
#include "fuzzyrel/properties.hpp"
#include "fuzzyrel/relation.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fuzzyrel {

struct Preorder {
	FuzzyRelation edges; ///< crisp, reflexive, transitive
	double alpha_used = 0.0;

	[[nodiscard]] const LabeledSet& carrier() const noexcept { return edges.source(); }
};

/// Square boolean matrix in row-major order.
class BoolMatrix {
public:
	BoolMatrix() = default;
	explicit BoolMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

	[[nodiscard]] std::size_t size() const noexcept { return n_; }
	[[nodiscard]] bool operator()(std::size_t i, std::size_t j) const noexcept { return bits_[i * n_ + j] != 0; }
	void set(std::size_t i, std::size_t j, bool v = true) noexcept { bits_[i * n_ + j] = v ? 1 : 0; }

	friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

private:
	std::size_t n_ = 0;
	std::vector<unsigned char> bits_;
};

/// Warshall closure of a boolean relation (not reflexive).
[[nodiscard]] inline BoolMatrix transitive_closure(BoolMatrix m) {
	const std::size_t n = m.size();
	for (std::size_t k = 0; k < n; ++k) {
		for (std::size_t i = 0; i < n; ++i) {
			if (!m(i, k)) continue;
			for (std::size_t j = 0; j < n; ++j) {
				if (m(k, j)) m.set(i, j);
			}
		}
	}
	return m;
}

struct HasseDiagram {
	LabeledSet carrier;
	std::vector<std::vector<std::size_t>> classes; ///< member indices into carrier
	BoolMatrix order;                              ///< strict quotient order, order(a, b): a above b
	std::vector<std::pair<std::size_t, std::size_t>> covers;
	std::vector<int> levels; ///< per class, 1 = top; empty until levels() runs
	double alpha = 0.0;

	[[nodiscard]] std::vector<std::string> class_labels(std::size_t c) const {
		std::vector<std::string> out;
		for (std::size_t m : classes.at(c)) {
			out.push_back(carrier[m]);
		}
		return out;
	}

	[[nodiscard]] std::string class_name(std::size_t c) const {
		std::string out;
		for (std::size_t m : classes.at(c)) {
			if (!out.empty()) out += ", ";
			out += carrier[m];
		}
		return out;
	}

	/// Index of the class containing carrier element `element`.
	[[nodiscard]] std::size_t class_of(std::size_t element) const {
		for (std::size_t c = 0; c < classes.size(); ++c) {
			if (std::find(classes[c].begin(), classes[c].end(), element) != classes[c].end()) {
				return c;
			}
		}
		throw ContractError("element not in any class");
	}
};

/// Cut at alpha, then close reflexively and transitively.
[[nodiscard]] inline Preorder preorder_of(const FuzzyRelation& r, const AlphaPolicy& policy) {
	detail::require_square(r);
	const double alpha = policy.resolve(r);
	return Preorder{closure(alpha_cut_at(r, alpha), ClosureKind::preorder), alpha};
}

/// Classes of mutual reachability with the induced strict partial order.
[[nodiscard]] inline HasseDiagram quotient(const Preorder& p) {
	const FuzzyRelation& e = p.edges;
	const std::size_t n = e.rows();
	HasseDiagram h;
	h.carrier = p.carrier();
	h.alpha = p.alpha_used;
	std::vector<std::size_t> class_index(n, n);
	for (std::size_t i = 0; i < n; ++i) {
		if (class_index[i] != n) continue;
		const std::size_t c = h.classes.size();
		h.classes.emplace_back();
		for (std::size_t j = i; j < n; ++j) {
			if (class_index[j] == n && e(i, j) == 1.0 && e(j, i) == 1.0) {
				class_index[j] = c;
				h.classes.back().push_back(j);
			}
		}
	}
	h.order = BoolMatrix(h.classes.size());
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < n; ++j) {
			if (e(i, j) == 1.0 && class_index[i] != class_index[j]) {
				h.order.set(class_index[i], class_index[j]);
			}
		}
	}
	return h;
}

/// Keeps the cover edges of the strict order.
[[nodiscard]] inline HasseDiagram transitive_reduction(HasseDiagram h) {
	const std::size_t k = h.classes.size();
	const BoolMatrix full = transitive_closure(h.order);
	for (std::size_t a = 0; a < k; ++a) {
		if (full(a, a)) {
			throw ContractError("cycle in quotient order");
		}
	}
	h.order = full;
	h.covers.clear();
	for (std::size_t a = 0; a < k; ++a) {
		for (std::size_t b = 0; b < k; ++b) {
			if (!full(a, b)) continue;
			bool implied = false;
			for (std::size_t c = 0; c < k && !implied; ++c) {
				implied = full(a, c) && full(c, b);
			}
			if (!implied) {
				h.covers.emplace_back(a, b);
			}
		}
	}
	return h;
}

/// Level 1 for classes without an incoming cover, otherwise one more than
/// the deepest parent.
[[nodiscard]] inline std::vector<int> levels(const HasseDiagram& h) {
	const std::size_t k = h.classes.size();
	std::vector<std::vector<std::size_t>> parents(k);
	std::vector<std::size_t> indegree(k, 0);
	std::vector<std::vector<std::size_t>> children(k);
	for (auto [a, b] : h.covers) {
		parents[b].push_back(a);
		children[a].push_back(b);
		++indegree[b];
	}
	std::vector<int> level(k, 1);
	std::vector<std::size_t> ready;
	for (std::size_t c = 0; c < k; ++c) {
		if (indegree[c] == 0) ready.push_back(c);
	}
	std::size_t visited = 0;
	while (!ready.empty()) {
		const std::size_t c = ready.back();
		ready.pop_back();
		++visited;
		for (std::size_t d : children[c]) {
			level[d] = std::max(level[d], level[c] + 1);
			if (--indegree[d] == 0) ready.push_back(d);
		}
	}
	if (visited != k) {
		throw ContractError("cycle in cover relation");
	}
	return level;
}

[[nodiscard]] inline HasseDiagram with_levels(HasseDiagram h) {
	h.levels = levels(h);
	return h;
}

/// preorder_of, quotient, transitive_reduction and levels in one call.
[[nodiscard]] inline HasseDiagram hasse_of(const FuzzyRelation& r, const AlphaPolicy& policy) {
	return with_levels(transitive_reduction(quotient(preorder_of(r, policy))));
}

struct Classivalence {
	std::vector<std::vector<std::size_t>> row_classes;
	std::vector<std::vector<std::size_t>> col_classes;
	/// blocks[a][b]: row class a is related to column class b.
	std::vector<std::vector<bool>> blocks;
	double alpha = 0.0;
};

/// Groups rows (and columns) with identical vectors after the cut; the
/// block relation between the groups is bifunctional by construction.
[[nodiscard]] inline Classivalence classivalence(const FuzzyRelation& r, const AlphaPolicy& policy) {
	Classivalence out;
	out.alpha = policy.resolve(r);
	const FuzzyRelation c = alpha_cut_at(r, out.alpha);
	auto group = [](std::size_t count, auto&& same) {
		std::vector<std::vector<std::size_t>> groups;
		for (std::size_t i = 0; i < count; ++i) {
			auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return same(g.front(), i); });
			if (it == groups.end()) {
				groups.push_back({i});
			} else {
				it->push_back(i);
			}
		}
		return groups;
	};
	out.row_classes = group(c.rows(), [&](std::size_t a, std::size_t b) {
		return std::equal(c.row(a).begin(), c.row(a).end(), c.row(b).begin());
	});
	out.col_classes = group(c.cols(), [&](std::size_t a, std::size_t b) {
		for (std::size_t i = 0; i < c.rows(); ++i) {
			if (c(i, a) != c(i, b)) return false;
		}
		return true;
	});
	out.blocks.assign(out.row_classes.size(), std::vector<bool>(out.col_classes.size(), false));
	for (std::size_t a = 0; a < out.row_classes.size(); ++a) {
		for (std::size_t b = 0; b < out.col_classes.size(); ++b) {
			out.blocks[a][b] = c(out.row_classes[a].front(), out.col_classes[b].front()) == 1.0;
		}
	}
	return out;
}

/// Graphviz rendering: one node per class, one edge per cover, drawn from
/// the upper class to the lower one.
[[nodiscard]] inline std::string to_dot(const HasseDiagram& h, std::string_view name = "hasse") {
	auto escape = [](std::string_view s) {
		std::string o;
		for (char c : s) {
			if (c == '"' || c == '\\') o += '\\';
			o += c;
		}
		return o;
	};
	std::string out = "digraph \"" + escape(name) + "\" {\n";
	out += "  graph [alpha=\"" + format_number(h.alpha) + "\", rankdir=TB];\n";
	out += "  node [shape=box];\n";
	for (std::size_t c = 0; c < h.classes.size(); ++c) {
		out += "  n" + std::to_string(c) + " [label=\"" + escape(h.class_name(c)) + "\"";
		if (!h.levels.empty()) {
			out += ", level=" + std::to_string(h.levels[c]);
		}
		out += "];\n";
	}
	for (auto [a, b] : h.covers) {
		out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
	}
	out += "}\n";
	return out;
}

} // namespace fuzzyrel
