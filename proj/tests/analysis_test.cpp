#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace fuzzyrel;
using fuzzyrel::testkit::Gen;
using fuzzyrel::testkit::fixture;

namespace {

RepertoryGrid random_grid(Gen& g, std::size_t constructs, std::size_t respondents, bool numeric = false) {
	RepertoryGrid grid;
	for (std::size_t c = 0; c < constructs; ++c) {
		Construct con{"c" + std::to_string(c + 1), Pole{"p", {}, {}}, Pole{"s", {}, {}}};
		if (numeric) {
			con.primary.value = static_cast<double>(g.range(0, 100));
			con.secondary.value = static_cast<double>(g.range(0, 100));
			con.primary.unit = con.secondary.unit = "$";
		}
		grid.constructs.push_back(con);
	}
	for (std::size_t r = 0; r < respondents; ++r)
		for (const auto& c : grid.constructs)
			grid.assessments.push_back({"r" + std::to_string(r + 1), c.id, static_cast<int>(g.range(0, 6)) - 3});
	return grid;
}

const DependencyPolicy strict{System::L, Mode::mean, AlphaPolicy(1.0), std::nullopt};

bool has_edge(const std::vector<DependencyEdge>& edges, const std::string& from, const std::string& to) {
	return std::any_of(edges.begin(), edges.end(), [&](const auto& e) { return e.from == from && e.to == to; });
}

const RankInterval& interval_of(const FireResult& f, const std::string& item) {
	for (const auto& ri : f.intervals)
		if (ri.item == item) return ri;
	throw std::out_of_range(item);
}

csv::ValueTable technologies() { return csv::parse_value_table(csv::read_file(fixture("technologies.csv"))); }

FirePolicy technology_policy(AlphaPolicy alpha) {
	FirePolicy p;
	p.alpha = alpha;
	p.polarity["P1"] = Polarity::lower;
	return p;
}

} // namespace

TEST(Dependency, CrispChainGivesLinearHierarchy) {
	const DependencyReport rep = dependency_analysis(load_grid(fixture("chain_extrusion.json")), strict);
	const HasseDiagram& h = rep.hasse;
	ASSERT_EQ(h.classes.size(), 4u);
	std::map<std::string, int> level;
	for (std::size_t c = 0; c < h.classes.size(); ++c) level[h.class_name(c)] = h.levels[c];
	EXPECT_EQ(level, (std::map<std::string, int>{{"c3", 1}, {"c4", 2}, {"c2, c5", 3}, {"c7", 4}}));
	EXPECT_TRUE(has_edge(rep.necessary, "c3", "c7"));
	EXPECT_TRUE(has_edge(rep.necessary, "c2", "c5"));
	EXPECT_FALSE(has_edge(rep.necessary, "c7", "c3"));
	EXPECT_TRUE(has_edge(rep.independent, "c7", "c3") || rep.mean(*rep.profile.source().find("c7"), *rep.profile.source().find("c3")) >= 0.5);
	EXPECT_TRUE(rep.warnings.empty());
	EXPECT_EQ(rep.respondent_consistency.rows(), 4u);
}

TEST(Dependency, IngotGridUsesMeanAlphaByDefault) {
	const DependencyReport rep = dependency_analysis(load_grid(fixture("ingot.json")), DependencyPolicy{});
	EXPECT_NEAR(rep.alpha, rep.relation.mean_degree(), 1e-15);
	EXPECT_DOUBLE_EQ(rep.alpha_low, rep.alpha / 2.0);
	EXPECT_EQ(rep.hasse.classes.size(), 3u);
	EXPECT_EQ(rep.hasse.class_name(0), "c1, c13");
}

TEST(Dependency, PolicyErrorsAndWarnings) {
	const RepertoryGrid g = load_grid(fixture("chain_extrusion.json"));
	DependencyPolicy bad = strict;
	bad.alpha_low = 1.0;
	EXPECT_THROW((void)dependency_analysis(g, bad), ContractError);
	bad.alpha_low = 1.5;
	EXPECT_THROW((void)dependency_analysis(g, bad), ContractError);

	const DependencyReport single = dependency_analysis(g.restricted_to({"c2"}), DependencyPolicy{});
	EXPECT_EQ(single.warnings.size(), 1u);
	EXPECT_TRUE(single.necessary.empty());
}

TEST(DependencyProperty, ClassificationInvariants) {
	Gen g(71);
	for (int trial = 0; trial < 150; ++trial) {
		const RepertoryGrid grid = random_grid(g, g.range(2, 7), g.range(1, 6));
		DependencyPolicy policy;
		policy.system = g.coin() ? System::L : System::KDL;
		policy.mode = g.coin() ? Mode::mean : Mode::harsh;
		const DependencyReport rep = dependency_analysis(grid, policy);
		for (const auto& e : rep.necessary) {
			ASSERT_NE(e.from, e.to);
			ASSERT_TRUE(has_edge(rep.possible, e.from, e.to));
		}
		for (const auto& e : rep.independent) ASSERT_FALSE(has_edge(rep.possible, e.from, e.to));
		for (std::size_t i = 0; i < rep.harsh.degrees().size(); ++i)
			ASSERT_LE(rep.harsh.degrees()[i], rep.mean.degrees()[i] + 1e-15);
		ASSERT_EQ(rep.preorder.edges, preorder_of(rep.relation, AlphaPolicy(rep.alpha)).edges);
		ASSERT_EQ(dependency_analysis(grid, policy, affine7(), 3).relation, rep.relation);
	}
}

TEST(Compare, SimilarityIsLukasiewiczEquivalence) {
	const ComparisonReport rep = compare_memberships({"c1"}, {0.5}, {0.8});
	ASSERT_EQ(rep.per_construct.size(), 1u);
	EXPECT_NEAR(rep.per_construct[0].similarity, 0.7, 1e-12);
	EXPECT_NEAR(rep.per_construct[0].difference, 0.3, 1e-12);
	EXPECT_EQ(rep.count_similar_70, 1u);
	EXPECT_EQ(rep.pct_similar_70, 100.0);
}

TEST(Compare, SummaryStatistics) {
	const ComparisonReport rep = compare_memberships({"a", "b", "c", "d"}, {0.0, 0.5, 1.0, 0.2}, {1.0, 0.5, 0.1, 0.2});
	EXPECT_DOUBLE_EQ(rep.max_difference, 1.0);
	EXPECT_DOUBLE_EQ(rep.min_difference, 0.0);
	EXPECT_NEAR(rep.mean_difference, 0.475, 1e-12);
	EXPECT_EQ(rep.count_near_max, 2u); // 1.0 and 0.9
	EXPECT_EQ(rep.count_near_min, 2u);
	EXPECT_EQ(rep.count_similar_70, 2u);
	EXPECT_DOUBLE_EQ(rep.pct_similar_70, 50.0);
}

TEST(Compare, ObjectGridsAndMismatch) {
	const RepertoryGrid a = load_grid(fixture("ingot_nickel.json"));
	const RepertoryGrid b = load_grid(fixture("ingot_titanium.json"));
	const ComparisonReport rep = compare_objects(a, b);
	EXPECT_EQ(rep.per_construct.size(), a.constructs.size());
	const ComparisonReport self = compare_objects(a, a);
	EXPECT_EQ(self.max_difference, 0.0);
	EXPECT_EQ(self.count_similar_70, a.constructs.size());
	try {
		(void)compare_objects(a, a.restricted_to({"c1", "c2"}));
		FAIL();
	} catch (const ContractError& e) {
		EXPECT_NE(std::string(e.what()).find("construct set mismatch"), std::string::npos);
	}
}

TEST(CompareProperty, SymmetricAndInvariantUnderComplement) {
	Gen g(72);
	for (int trial = 0; trial < 200; ++trial) {
		const std::size_t n = g.range(1, 12);
		std::vector<std::string> ids;
		std::vector<double> a, b, ca, cb;
		for (std::size_t i = 0; i < n; ++i) {
			ids.push_back("c" + std::to_string(i));
			a.push_back(g.unit());
			b.push_back(g.unit());
			ca.push_back(1.0 - a.back());
			cb.push_back(1.0 - b.back());
		}
		const ComparisonReport x = compare_memberships(ids, a, b), y = compare_memberships(ids, b, a),
		                       z = compare_memberships(ids, ca, cb);
		for (const ComparisonReport* other : {&y, &z}) {
			ASSERT_NEAR(other->mean_difference, x.mean_difference, 1e-12);
			ASSERT_NEAR(other->max_difference, x.max_difference, 1e-12);
			for (std::size_t i = 0; i < n; ++i)
				ASSERT_NEAR(other->per_construct[i].similarity, x.per_construct[i].similarity, 1e-12);
		}
		ASSERT_EQ(y.count_similar_70, x.count_similar_70);
		for (const auto& c : x.per_construct) ASSERT_NEAR(c.similarity + c.difference, 1.0, 1e-12);
	}
}

TEST(Contexts, ExtrusionVersusForging) {
	const ContextComparison cc = compare_contexts(load_grid(fixture("context_extrusion.json")),
	                                              load_grid(fixture("context_forging.json")), strict);
	EXPECT_EQ(cc.shared_ids, (std::vector<std::string>{"c2", "c5", "c7", "c9"}));
	EXPECT_EQ(cc.classes_only_a, (std::vector<std::vector<std::string>>{{"c2", "c9"}}));
	EXPECT_EQ(cc.classes_only_b, (std::vector<std::vector<std::string>>{{"c2", "c5"}}));
	const auto has = [&](const std::string& x, const std::string& y) {
		return std::find(cc.common_edges.begin(), cc.common_edges.end(), std::pair{x, y}) != cc.common_edges.end();
	};
	EXPECT_TRUE(has("c2", "c7"));
	EXPECT_TRUE(has("c5", "c2"));
	EXPECT_FALSE(has("c9", "c7") && has("c7", "c9"));
	EXPECT_TRUE(cc.contrapositive_a.holds);
	EXPECT_TRUE(cc.contrapositive_b.holds);
}

TEST(Contexts, NoSharedConstructs) {
	RepertoryGrid a = load_grid(fixture("context_extrusion.json"));
	RepertoryGrid b = negate_grid(a);
	EXPECT_THROW((void)compare_contexts(a, b, strict), ContractError);
}

// Crisp grids: i depends on j exactly when not_j depends on not_i.
TEST(ContextsProperty, CrispNegationMirrorsTheOrder) {
	Gen g(73);
	for (int trial = 0; trial < 100; ++trial) {
		RepertoryGrid grid = random_grid(g, g.range(2, 6), g.range(1, 5));
		for (auto& a : grid.assessments) a.scale = a.scale >= 0 ? 3 : -3;
		const DependencyReport pos = dependency_analysis(grid, strict);
		const DependencyReport neg = dependency_analysis(negate_grid(grid), strict);
		ASSERT_TRUE(contrapositive_check(pos.preorder.edges, neg.preorder.edges).holds);
	}
}

TEST(Fire, NormalizationAndPolarity) {
	csv::ValueTable t{{"a", "b", "c"}, {"x", "y", "k"}, {{1, 10, 5}, {2, 20, 5}, {3, 0, 5}}};
	std::vector<std::string> dropped;
	const FuzzyRelation n = normalize_table(t, {{"y", Polarity::lower}}, &dropped);
	EXPECT_EQ(dropped, (std::vector<std::string>{"k"}));
	EXPECT_EQ(n.cols(), 2u);
	EXPECT_EQ(n(0, 0), 0.0);
	EXPECT_EQ(n(2, 0), 1.0);
	EXPECT_EQ(n(1, 1), 0.0);
	EXPECT_EQ(n(2, 1), 1.0);
	EXPECT_THROW((void)normalize_table(t, {{"zz", Polarity::lower}}), ContractError);
}

TEST(Fire, DominantItemRanksFirstInEverySystem) {
	csv::ValueTable t{{"best", "mid", "low"}, {"p", "q"}, {{9, 9}, {5, 4}, {1, 2}}};
	FirePolicy policy;
	policy.alpha = AlphaPolicy(0.5);
	const FireResult f = fire_ranking(t, policy);
	EXPECT_EQ(interval_of(f, "best").low, 1);
	EXPECT_EQ(interval_of(f, "best").high, 1);
	EXPECT_GT(interval_of(f, "low").low, 1);
	EXPECT_EQ(f.rankings.size(), 3u);
}

TEST(Fire, IdenticalItemsShareAClass) {
	csv::ValueTable t{{"a", "b", "c"}, {"p", "q"}, {{3, 1}, {3, 1}, {0, 4}}};
	const FireResult f = fire_ranking(t, FirePolicy{});
	for (const auto& r : f.rankings) EXPECT_EQ(r.hasse.class_of(0), r.hasse.class_of(1));
	EXPECT_EQ(interval_of(f, "a").low, interval_of(f, "b").low);
	EXPECT_EQ(interval_of(f, "a").high, interval_of(f, "b").high);
}

TEST(Fire, Errors) {
	csv::ValueTable one{{"a"}, {"p"}, {{1}}};
	EXPECT_THROW((void)fire_ranking(one, FirePolicy{}), ContractError);
	csv::ValueTable flat{{"a", "b"}, {"p"}, {{1}, {1}}};
	EXPECT_THROW((void)fire_ranking(flat, FirePolicy{}), ContractError);
}

TEST(Fire, TechnologiesMeanCut) {
	const FireResult f = fire_ranking(technologies(), technology_policy(AlphaPolicy::mean()));
	const SystemRanking& l = f.rankings.front();
	ASSERT_EQ(l.system, System::L);
	EXPECT_EQ(l.hasse.class_name(l.hasse.class_of(2)), "T3");
	EXPECT_EQ(l.hasse.levels[l.hasse.class_of(2)], 1);
	for (const auto& ri : f.intervals) {
		EXPECT_LE(ri.low, ri.high);
		EXPECT_EQ(ri.per_logic_levels.size(), 3u);
	}
	EXPECT_EQ(interval_of(f, "T3").low, 1);
}

TEST(Fire, ThreadCountDoesNotChangeResult) {
	const FireResult a = fire_ranking(technologies(), technology_policy(AlphaPolicy::mean()), 1);
	const FireResult b = fire_ranking(technologies(), technology_policy(AlphaPolicy::mean()), 3);
	for (std::size_t i = 0; i < a.intervals.size(); ++i) {
		EXPECT_EQ(a.intervals[i].low, b.intervals[i].low);
		EXPECT_EQ(a.intervals[i].high, b.intervals[i].high);
	}
}

namespace {

// Copy of `item` moved 1% of each column's range toward its worse end.
csv::ValueTable with_dominated_copy(csv::ValueTable t, std::size_t item, const std::map<std::string, Polarity>& pol) {
	std::vector<double> copy = t.values[item];
	for (std::size_t c = 0; c < t.columns.size(); ++c) {
		double lo = t.values.front()[c], hi = lo;
		for (const auto& row : t.values) {
			lo = std::min(lo, row[c]);
			hi = std::max(hi, row[c]);
		}
		const auto it = pol.find(t.columns[c]);
		const bool lower_better = it != pol.end() && it->second == Polarity::lower;
		const double step = 0.01 * (hi - lo);
		copy[c] = lower_better ? std::min(hi, copy[c] + step) : std::max(lo, copy[c] - step);
	}
	t.items.push_back(t.items[item] + "_copy");
	t.values.push_back(copy);
	return t;
}

} // namespace

TEST(FireProperty, DominatedCopyLeavesOtherIntervalsUnchanged) {
	const csv::ValueTable base = technologies();
	for (AlphaPolicy alpha : {AlphaPolicy(0.17), AlphaPolicy::mean()}) {
		const FirePolicy policy = technology_policy(alpha);
		const FireResult before = fire_ranking(base, policy);
		for (std::size_t item = 0; item < base.items.size(); ++item) {
			const FireResult after = fire_ranking(with_dominated_copy(base, item, policy.polarity), policy);
			for (const auto& ri : before.intervals) {
				const RankInterval& now = interval_of(after, ri.item);
				EXPECT_EQ(now.low, ri.low) << alpha.to_string() << " copy of " << base.items[item] << " moved " << ri.item;
				EXPECT_EQ(now.high, ri.high) << alpha.to_string() << " copy of " << base.items[item] << " moved " << ri.item;
			}
		}
	}
}

TEST(Cost, IngotGridExamples) {
	const RepertoryGrid g = load_grid(fixture("ingot.json"));
	EXPECT_THROW((void)cost_interval(g), ContractError); // %, $/lb, lb ... mixed
	const CostInterval c1 = cost_interval(g, std::map<std::string, double>{{"c1", 1.0}});
	EXPECT_DOUBLE_EQ(c1.low, 27.5);
	EXPECT_DOUBLE_EQ(c1.high, 27.5);
	EXPECT_NEAR(c1.plinth, 1.0 / 6.0, 1e-15);
	EXPECT_EQ(c1.unit, "%");
	const CostInterval two = cost_interval(g, std::map<std::string, double>{{"c1", 1.0}, {"c13", 1.0}});
	EXPECT_DOUBLE_EQ(two.low, 35.0);
	const CostInterval weighted = cost_interval(g, std::map<std::string, double>{{"c1", 3.0}, {"c13", 1.0}, {"c2", 0.0}});
	EXPECT_DOUBLE_EQ(weighted.low, (3 * 27.5 + 42.5) / 4.0);
	EXPECT_EQ(weighted.per_construct.size(), 2u);
}

TEST(Cost, Errors) {
	const RepertoryGrid g = load_grid(fixture("ingot.json"));
	EXPECT_THROW((void)cost_interval(g, std::map<std::string, double>{{"c5", 1.0}}), ContractError);
	EXPECT_THROW((void)cost_interval(g, std::map<std::string, double>{{"c1", -1.0}}), ContractError);
	EXPECT_THROW((void)cost_interval(g, std::map<std::string, double>{{"c1", 0.0}}), ContractError);
	EXPECT_THROW((void)cost_interval(g, std::map<std::string, double>{{"nope", 1.0}}), ContractError);
}

TEST(CostProperty, IntervalBoundsAndMonotonicity) {
	Gen g(74);
	for (int trial = 0; trial < 200; ++trial) {
		RepertoryGrid grid = random_grid(g, g.range(1, 5), g.range(1, 4), true);
		const CostInterval c = cost_interval(grid);
		ASSERT_LE(c.low, c.high + 1e-12);
		double lo_bound = 0.0, hi_bound = 0.0;
		for (const auto& con : grid.constructs) {
			lo_bound += std::min(*con.primary.value, *con.secondary.value);
			hi_bound += std::max(*con.primary.value, *con.secondary.value);
		}
		const double n = static_cast<double>(grid.constructs.size());
		ASSERT_GE(c.low, lo_bound / n - 1e-9);
		ASSERT_LE(c.high, hi_bound / n + 1e-9);

		// an extra respondent can only widen the interval
		RepertoryGrid wider = grid;
		for (const auto& con : grid.constructs)
			wider.assessments.push_back({"extra", con.id, static_cast<int>(g.range(0, 6)) - 3});
		const CostInterval w = cost_interval(wider);
		ASSERT_LE(w.low, c.low + 1e-12);
		ASSERT_GE(w.high, c.high - 1e-12);
		ASSERT_LE(w.plinth, c.plinth);

		std::reverse(grid.assessments.begin(), grid.assessments.end());
		const CostInterval r = cost_interval(grid);
		ASSERT_EQ(r.low, c.low);
		ASSERT_EQ(r.high, c.high);
	}
}

TEST(ValueAnalysis, PartFeatureInclusion) {
	const FuzzyRelation py(LabeledSet{"p1", "p2"}, LabeledSet{"y1", "y2"}, {1, 0, 1, 1});
	const FuzzyRelation inc = part_feature_inclusion(py, InnerConnective::implication, Mode::harsh, System::Sharp);
	EXPECT_EQ(inc(0, 1), 1.0);
	EXPECT_EQ(inc(1, 0), 0.0);
	EXPECT_EQ(inc.source(), py.source());
	const FuzzyRelation eq = part_feature_inclusion(py, InnerConnective::equivalence, Mode::mean, System::Sharp);
	EXPECT_EQ(eq(0, 1), 0.5);
	EXPECT_EQ(eq(0, 0), 1.0);
}

TEST(ValueAnalysis, VariantExchangeability) {
	Gen g(75);
	std::vector<double> d(2 * 3 * 2);
	for (auto& v : d) v = g.unit();
	const TernaryRelation vyc({LabeledSet{"v1", "v2"}, LabeledSet{"y1", "y2", "y3"}, LabeledSet{"lo", "hi"}}, d);
	const Tensor4 x = variant_exchangeability(vyc, Mode::mean, System::L);
	for (std::size_t i = 0; i < 2; ++i)
		for (std::size_t k = 0; k < 2; ++k) {
			EXPECT_EQ(x(i, k, i, k), 1.0);
			for (std::size_t l = 0; l < 2; ++l)
				for (std::size_t n = 0; n < 2; ++n) EXPECT_NEAR(x(i, k, l, n), x(l, n, i, k), 1e-15);
		}
}
