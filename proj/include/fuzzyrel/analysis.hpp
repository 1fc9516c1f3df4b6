#pragma once

/**
 * @file
 *
 * End-to-end affordability analyses built on the relational core:
 * dependency analysis of a repertory grid, comparison of two objects and of
 * two contexts, interval ranking over several logic systems, interval cost
 * aggregation, and value-analysis queries over part/feature/cost relations.
 */

#include "fuzzyrel/grid.hpp"
#include "fuzzyrel/parallel.hpp"
#include "fuzzyrel/properties.hpp"
#include "fuzzyrel/relation.hpp"
#include "fuzzyrel/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fuzzyrel {

// ---------------------------------------------------------------------------
// Dependency analysis

/// Thresholds that classify dependencies. A pair i, j (i != j) is
///   necessary    when the harsh subproduct degree is >= alpha,
///   possible     when the mean subproduct degree is >= alpha,
///   independent  when the mean subproduct degree is < alpha_low.
/// alpha_low defaults to alpha / 2.
struct DependencyPolicy {
	System system = System::L;
	Mode mode = Mode::mean;
	AlphaPolicy alpha = AlphaPolicy::mean();
	std::optional<double> alpha_low;
};

struct DependencyEdge {
	std::string from; ///< the dependent construct
	std::string to;   ///< the construct it depends on
	double degree = 0.0;

	friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct DependencyReport {
	FuzzyRelation profile;  ///< constructs x respondents
	FuzzyRelation relation; ///< constructs x constructs, in the policy's mode
	FuzzyRelation harsh;
	FuzzyRelation mean;
	Preorder preorder;
	HasseDiagram hasse;
	double alpha = 0.0;
	double alpha_low = 0.0;
	std::vector<DependencyEdge> necessary;
	std::vector<DependencyEdge> possible;
	std::vector<DependencyEdge> independent;
	FuzzyRelation respondent_consistency; ///< respondents x respondents
	std::vector<std::string> warnings;
};

/// relation(i, j) is the degree to which construct i's profile over the
/// respondents is included in construct j's, read "i depends on j".
[[nodiscard]] inline DependencyReport dependency_analysis(const RepertoryGrid& g, const DependencyPolicy& policy,
                                                          const ScaleMap& map = affine7(), unsigned threads = 1) {
	DependencyReport rep;
	rep.profile = to_profile_matrix(g, map);
	const FuzzyRelation dt = transpose(rep.profile);
	rep.harsh = compose(rep.profile, dt, {ProductType::sub, Mode::harsh, policy.system}, threads);
	rep.mean = compose(rep.profile, dt, {ProductType::sub, Mode::mean, policy.system}, threads);
	rep.relation = policy.mode == Mode::harsh ? rep.harsh : rep.mean;

	rep.alpha = policy.alpha.resolve(rep.relation);
	rep.alpha_low = policy.alpha_low.value_or(rep.alpha / 2.0);
	if (!(rep.alpha_low >= 0.0 && rep.alpha_low <= 1.0)) {
		throw ContractError("alpha_low out of range");
	}
	if (rep.alpha_low > rep.alpha || (rep.alpha > 0.0 && rep.alpha_low == rep.alpha)) {
		throw ContractError("alpha_low must be below alpha");
	}

	rep.preorder = preorder_of(rep.relation, AlphaPolicy(rep.alpha));
	rep.hasse = with_levels(transitive_reduction(quotient(rep.preorder)));

	const LabeledSet& ids = rep.profile.source();
	for (std::size_t i = 0; i < ids.size(); ++i) {
		for (std::size_t j = 0; j < ids.size(); ++j) {
			if (i == j) continue;
			if (rep.harsh(i, j) >= rep.alpha) rep.necessary.push_back({ids[i], ids[j], rep.harsh(i, j)});
			if (rep.mean(i, j) >= rep.alpha) rep.possible.push_back({ids[i], ids[j], rep.mean(i, j)});
			if (rep.mean(i, j) < rep.alpha_low) rep.independent.push_back({ids[i], ids[j], rep.mean(i, j)});
		}
	}
	rep.respondent_consistency =
	    compose(dt, rep.profile, {ProductType::square, policy.mode, policy.system}, threads);
	if (ids.size() == 1) {
		rep.warnings.push_back("single construct: dependency structure is degenerate");
	}
	return rep;
}

// ---------------------------------------------------------------------------
// Object comparison

struct ConstructComparison {
	std::string id;
	double similarity = 0.0;
	double difference = 0.0;
};

struct ComparisonReport {
	std::vector<ConstructComparison> per_construct;
	double mean_difference = 0.0;
	double max_difference = 0.0;
	double min_difference = 0.0;
	std::size_t count_near_max = 0;   ///< difference within 10% of max below max
	std::size_t count_near_min = 0;   ///< difference within 10% of max above min
	std::size_t count_similar_70 = 0; ///< similarity >= 0.7
	double pct_similar_70 = 0.0;      ///< percent, 0..100
};

/// Slack for the band and threshold comparisons, whose boundaries are
/// decimal fractions not exactly representable in binary.
inline constexpr double comparison_slack = 1e-9;

namespace detail {

inline std::vector<double> mean_memberships(const RepertoryGrid& g, const ScaleMap& map) {
	const FuzzyRelation d = to_profile_matrix(g, map);
	std::vector<double> out(d.rows());
	for (std::size_t i = 0; i < d.rows(); ++i) {
		double s = 0.0;
		for (double v : d.row(i)) s += v;
		out[i] = s / static_cast<double>(d.cols());
	}
	return out;
}

} // namespace detail

/// Summarizes per-construct differences between two objects with the same
/// constructs. Similarity is the Lukasiewicz equivalence 1 - |a - b| of the
/// respondent-averaged memberships; difference is its dual |a - b|.
[[nodiscard]] inline ComparisonReport compare_memberships(const std::vector<std::string>& ids,
                                                          const std::vector<double>& a,
                                                          const std::vector<double>& b) {
	if (ids.empty() || a.size() != ids.size() || b.size() != ids.size()) {
		throw ContractError("construct set mismatch");
	}
	ComparisonReport rep;
	double sum = 0.0;
	rep.min_difference = 1.0;
	for (std::size_t i = 0; i < ids.size(); ++i) {
		const double diff = std::abs(a[i] - b[i]);
		rep.per_construct.push_back({ids[i], equiv(System::L, a[i], b[i]), diff});
		sum += diff;
		rep.max_difference = std::max(rep.max_difference, diff);
		rep.min_difference = std::min(rep.min_difference, diff);
	}
	rep.mean_difference = sum / static_cast<double>(ids.size());
	const double band = 0.1 * rep.max_difference;
	for (const auto& c : rep.per_construct) {
		if (c.difference >= rep.max_difference - band - comparison_slack) ++rep.count_near_max;
		if (c.difference <= rep.min_difference + band + comparison_slack) ++rep.count_near_min;
		if (c.similarity >= 0.7 - comparison_slack) ++rep.count_similar_70;
	}
	rep.pct_similar_70 = 100.0 * static_cast<double>(rep.count_similar_70) / static_cast<double>(ids.size());
	return rep;
}

[[nodiscard]] inline ComparisonReport compare_objects(const RepertoryGrid& a, const RepertoryGrid& b,
                                                      const ScaleMap& map = affine7()) {
	const auto ids_a = a.construct_ids();
	const auto ids_b = b.construct_ids();
	if (ids_a != ids_b) {
		std::string offending;
		const std::size_t n = std::max(ids_a.size(), ids_b.size());
		for (std::size_t i = 0; i < n; ++i) {
			const std::string x = i < ids_a.size() ? ids_a[i] : "<none>";
			const std::string y = i < ids_b.size() ? ids_b[i] : "<none>";
			if (x != y) {
				if (!offending.empty()) offending += ", ";
				offending += x + "/" + y;
			}
		}
		throw ContractError("construct set mismatch: " + offending);
	}
	return compare_memberships(ids_a, detail::mean_memberships(a, map), detail::mean_memberships(b, map));
}

// ---------------------------------------------------------------------------
// Context comparison

struct ContextComparison {
	std::vector<std::string> shared_ids;
	DependencyReport a;
	DependencyReport b;
	DependencyReport negated_a;
	DependencyReport negated_b;
	/// Strict preorder edges (i depends on j) present in both contexts.
	std::vector<std::pair<std::string, std::string>> common_edges;
	std::vector<std::vector<std::string>> classes_a; ///< non-singleton classes
	std::vector<std::vector<std::string>> classes_b;
	std::vector<std::vector<std::string>> classes_only_a;
	std::vector<std::vector<std::string>> classes_only_b;
	ContrapositiveResult contrapositive_a;
	ContrapositiveResult contrapositive_b;
};

namespace detail {

inline std::vector<std::vector<std::string>> multi_member_classes(const HasseDiagram& h) {
	std::vector<std::vector<std::string>> out;
	for (std::size_t c = 0; c < h.classes.size(); ++c) {
		if (h.classes[c].size() > 1) out.push_back(h.class_labels(c));
	}
	return out;
}

inline std::vector<std::vector<std::string>> minus(const std::vector<std::vector<std::string>>& x,
                                                   const std::vector<std::vector<std::string>>& y) {
	std::vector<std::vector<std::string>> out;
	for (const auto& c : x) {
		if (std::find(y.begin(), y.end(), c) == y.end()) out.push_back(c);
	}
	return out;
}

} // namespace detail

/// Runs the dependency analysis on the constructs two contexts share, and on
/// their negations, then reports what the contexts have in common.
[[nodiscard]] inline ContextComparison compare_contexts(const RepertoryGrid& a, const RepertoryGrid& b,
                                                        const DependencyPolicy& policy,
                                                        const ScaleMap& map = affine7()) {
	ContextComparison out;
	for (const auto& id : a.construct_ids()) {
		const auto ids_b = b.construct_ids();
		if (std::find(ids_b.begin(), ids_b.end(), id) != ids_b.end()) {
			out.shared_ids.push_back(id);
		}
	}
	if (out.shared_ids.empty()) {
		throw ContractError("contexts share no construct ids");
	}
	const RepertoryGrid ra = a.restricted_to(out.shared_ids);
	const RepertoryGrid rb = b.restricted_to(out.shared_ids);
	out.a = dependency_analysis(ra, policy, map);
	out.b = dependency_analysis(rb, policy, map);
	out.negated_a = dependency_analysis(negate_grid(ra), policy, map);
	out.negated_b = dependency_analysis(negate_grid(rb), policy, map);

	const FuzzyRelation& ea = out.a.preorder.edges;
	const FuzzyRelation& eb = out.b.preorder.edges;
	for (std::size_t i = 0; i < out.shared_ids.size(); ++i) {
		for (std::size_t j = 0; j < out.shared_ids.size(); ++j) {
			if (i != j && ea(i, j) == 1.0 && eb(i, j) == 1.0) {
				out.common_edges.emplace_back(out.shared_ids[i], out.shared_ids[j]);
			}
		}
	}
	out.classes_a = detail::multi_member_classes(out.a.hasse);
	out.classes_b = detail::multi_member_classes(out.b.hasse);
	out.classes_only_a = detail::minus(out.classes_a, out.classes_b);
	out.classes_only_b = detail::minus(out.classes_b, out.classes_a);
	out.contrapositive_a = contrapositive_check(ea, out.negated_a.preorder.edges);
	out.contrapositive_b = contrapositive_check(eb, out.negated_b.preorder.edges);
	return out;
}

// ---------------------------------------------------------------------------
// Interval ranking over several logic systems

enum class Polarity { higher, lower };

struct RankInterval {
	std::string item;
	int low = 0;
	int high = 0;
	std::vector<std::pair<System, int>> per_logic_levels;
};

struct SystemRanking {
	System system = System::L;
	FuzzyRelation dominance; ///< items x items, (i, k): degree i dominates k
	HasseDiagram hasse;
};

struct FireResult {
	FuzzyRelation normalized; ///< items x kept parameters
	std::vector<std::string> dropped_columns;
	std::vector<SystemRanking> rankings;
	std::vector<RankInterval> intervals;
	std::vector<std::string> warnings;
};

struct FirePolicy {
	std::vector<System> systems{System::L, System::KDL, System::KD};
	AlphaPolicy alpha = AlphaPolicy::mean();
	Mode mode = Mode::mean;
	std::map<std::string, Polarity> polarity; ///< unlisted columns are higher-is-better
};

/// Min-max normalizes each column (inverted for lower-is-better columns) and
/// drops constant columns.
[[nodiscard]] inline FuzzyRelation normalize_table(const csv::ValueTable& table,
                                                   const std::map<std::string, Polarity>& polarity,
                                                   std::vector<std::string>* dropped = nullptr) {
	for (const auto& [col, _] : polarity) {
		if (std::find(table.columns.begin(), table.columns.end(), col) == table.columns.end()) {
			throw ContractError("polarity given for unknown column '" + col + "'");
		}
	}
	std::vector<std::string> kept;
	std::vector<std::vector<double>> columns;
	for (std::size_t c = 0; c < table.columns.size(); ++c) {
		double lo = table.values.front()[c];
		double hi = lo;
		for (const auto& row : table.values) {
			lo = std::min(lo, row[c]);
			hi = std::max(hi, row[c]);
		}
		if (hi == lo) {
			if (dropped) dropped->push_back(table.columns[c]);
			continue;
		}
		auto it = polarity.find(table.columns[c]);
		const bool invert = it != polarity.end() && it->second == Polarity::lower;
		std::vector<double> col;
		for (const auto& row : table.values) {
			const double x = (row[c] - lo) / (hi - lo);
			col.push_back(detail::clamp_unit(invert ? 1.0 - x : x));
		}
		kept.push_back(table.columns[c]);
		columns.push_back(std::move(col));
	}
	if (kept.empty()) {
		throw ContractError("no parameter columns left after dropping constant columns");
	}
	std::vector<double> degrees;
	for (std::size_t i = 0; i < table.items.size(); ++i) {
		for (const auto& col : columns) degrees.push_back(col[i]);
	}
	return FuzzyRelation(LabeledSet(table.items), LabeledSet(std::move(kept)), std::move(degrees));
}

/// Per system: dominance P = N super N^T, then the Hasse diagram of P at
/// alpha. Each item's interval spans its class levels across the systems.
[[nodiscard]] inline FireResult fire_ranking(const csv::ValueTable& table, const FirePolicy& policy,
                                             unsigned threads = 1) {
	if (table.items.size() < 2) {
		throw ContractError("need >= 2 items");
	}
	if (policy.systems.empty()) {
		throw ContractError("need at least one logic system");
	}
	for (const auto& row : table.values) {
		if (row.size() != table.columns.size()) {
			throw ContractError("ragged value table");
		}
	}
	FireResult out;
	out.normalized = normalize_table(table, policy.polarity, &out.dropped_columns);
	for (const auto& col : out.dropped_columns) {
		out.warnings.push_back("constant column '" + col + "' dropped");
	}
	const FuzzyRelation nt = transpose(out.normalized);
	out.rankings.resize(policy.systems.size());
	parallel_for(policy.systems.size(), threads, [&](std::size_t s) {
		const System sys = policy.systems[s];
		SystemRanking& r = out.rankings[s];
		r.system = sys;
		r.dominance = compose(out.normalized, nt, {ProductType::super, policy.mode, sys});
		r.hasse = hasse_of(r.dominance, policy.alpha);
	});
	const LabeledSet& items = out.normalized.source();
	for (std::size_t i = 0; i < items.size(); ++i) {
		RankInterval ri;
		ri.item = items[i];
		ri.low = std::numeric_limits<int>::max();
		ri.high = std::numeric_limits<int>::min();
		for (const auto& r : out.rankings) {
			const int level = r.hasse.levels[r.hasse.class_of(i)];
			ri.per_logic_levels.emplace_back(r.system, level);
			ri.low = std::min(ri.low, level);
			ri.high = std::max(ri.high, level);
		}
		out.intervals.push_back(std::move(ri));
	}
	return out;
}

// ---------------------------------------------------------------------------
// Interval cost aggregation

struct ConstructCost {
	std::string id;
	double low = 0.0;
	double high = 0.0;
	double weight = 1.0;
};

struct CostInterval {
	double low = 0.0;
	double high = 0.0;
	double plinth = 0.0; ///< smallest membership among the included assessments
	std::string unit;
	std::vector<ConstructCost> per_construct;
};

/// Each assessment yields the point cost secondary + m * (primary - secondary);
/// a construct's interval is the hull over respondents, and the aggregate is
/// the weighted mean of the construct intervals.
///
/// Without weights every construct with numeric values on both poles is
/// included; with weights, exactly the constructs with positive weight.
[[nodiscard]] inline CostInterval cost_interval(const RepertoryGrid& g,
                                                const std::optional<std::map<std::string, double>>& weights = {},
                                                const ScaleMap& map = affine7()) {
	std::vector<std::pair<const Construct*, double>> included;
	if (weights) {
		bool any_positive = false;
		for (const auto& [id, w] : *weights) {
			if (!(w >= 0.0) || !std::isfinite(w)) {
				throw ContractError("weight of '" + id + "' must be non-negative");
			}
			any_positive = any_positive || w > 0.0;
		}
		if (!any_positive) {
			throw ContractError("weights must not all be zero");
		}
		for (const auto& c : g.constructs) {
			auto it = weights->find(c.id);
			if (it == weights->end() || it->second == 0.0) continue;
			if (!c.numeric()) {
				throw ContractError("construct '" + c.id + "' has no numeric pole values");
			}
			included.emplace_back(&c, it->second);
		}
		for (const auto& [id, _] : *weights) {
			(void)g.construct(id);
		}
	} else {
		for (const auto& c : g.constructs) {
			if (c.numeric()) included.emplace_back(&c, 1.0);
		}
	}
	if (included.empty()) {
		throw ContractError("no numeric constructs");
	}

	CostInterval out;
	auto unit_of = [](const Construct& c) {
		const std::string p = c.primary.unit.value_or("");
		const std::string s = c.secondary.unit.value_or("");
		if (p != s) {
			throw ContractError("construct '" + c.id + "' has different units on its poles");
		}
		return p;
	};
	out.unit = unit_of(*included.front().first);
	for (const auto& [c, w] : included) {
		if (unit_of(*c) != out.unit) {
			throw ContractError("mixed units: '" + out.unit + "' and '" + unit_of(*c) + "'");
		}
	}

	out.plinth = 1.0;
	double total_weight = 0.0;
	for (const auto& [c, w] : included) {
		const double prim = *c->primary.value;
		const double sec = *c->secondary.value;
		ConstructCost cc{c->id, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), w};
		for (const auto& a : g.assessments) {
			if (a.construct != c->id) continue;
			const double m = map.membership(a.scale);
			const double point = sec + m * (prim - sec);
			cc.low = std::min(cc.low, point);
			cc.high = std::max(cc.high, point);
			out.plinth = std::min(out.plinth, m);
		}
		if (cc.low > cc.high) {
			throw ContractError("construct '" + c->id + "' has no assessments");
		}
		out.low += w * cc.low;
		out.high += w * cc.high;
		total_weight += w;
		out.per_construct.push_back(std::move(cc));
	}
	out.low /= total_weight;
	out.high /= total_weight;
	return out;
}

// ---------------------------------------------------------------------------
// Value analysis

enum class InnerConnective { implication, equivalence };

/// Degree to which part i's features are included in part k's (inner
/// implication), or match them (inner equivalence).
[[nodiscard]] inline FuzzyRelation part_feature_inclusion(const FuzzyRelation& py, InnerConnective inner, Mode mode,
                                                          ConnectiveSystem system) {
	const ProductType type = inner == InnerConnective::implication ? ProductType::sub : ProductType::square;
	return compose(py, transpose(py), {type, mode, system.id()});
}

/// Exchangeability of (variant, cost) pairs over a variants x features x
/// costs relation: out(i, k, l, n) aggregates equiv(VYC_ijk, VYC_ljn) over j.
[[nodiscard]] inline Tensor4 variant_exchangeability(const TernaryRelation& vyc, Mode mode, ConnectiveSystem system) {
	return ternary_square(vyc, vyc, 1, mode, system);
}

} // namespace fuzzyrel
