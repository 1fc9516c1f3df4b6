#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fuzzyrel;
using fuzzyrel::testkit::Gen;

namespace {

FuzzyRelation sq(const std::vector<std::vector<double>>& rows) { return FuzzyRelation::square_from_rows(rows); }

FuzzyRelation crisp3(unsigned bits) {
	std::vector<std::vector<double>> rows(3, std::vector<double>(3));
	for (unsigned k = 0; k < 9; ++k) rows[k / 3][k % 3] = (bits >> k) & 1u ? 1.0 : 0.0;
	return sq(rows);
}

bool brute_reflexive(const FuzzyRelation& r) {
	for (std::size_t i = 0; i < r.rows(); ++i)
		if (r(i, i) != 1.0) return false;
	return true;
}

bool brute_symmetric(const FuzzyRelation& r) {
	for (std::size_t i = 0; i < r.rows(); ++i)
		for (std::size_t j = 0; j < r.rows(); ++j)
			if (r(i, j) != r(j, i)) return false;
	return true;
}

bool brute_transitive(const FuzzyRelation& r) {
	const std::size_t n = r.rows();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				if (std::min(r(i, j), r(j, k)) > r(i, k)) return false;
	return true;
}

} // namespace

TEST(PropertyDegrees, Examples) {
	const PropertyReport id = property_degrees(FuzzyRelation::identity(LabeledSet{"a", "b", "c"}), System::L);
	EXPECT_EQ(id.reflexivity, 1.0);
	EXPECT_EQ(id.symmetry, 1.0);
	EXPECT_EQ(id.transitivity, 1.0);

	const PropertyReport order = property_degrees(sq({{1, 1}, {0, 1}}), System::Sharp);
	EXPECT_EQ(order.reflexivity, 1.0);
	EXPECT_EQ(order.symmetry, 0.0);
	EXPECT_EQ(order.transitivity, 1.0);

	EXPECT_DOUBLE_EQ(property_degrees(sq({{0.4, 0}, {0, 0.4}}), System::L).reflexivity, 0.4);
	EXPECT_THROW((void)property_degrees(FuzzyRelation::from_rows({{1, 0}}), System::L), ContractError);
}

TEST(PropertyDegrees, CrispMatchesClassicalProperties) {
	for (unsigned bits = 0; bits < 512; ++bits) {
		const FuzzyRelation r = crisp3(bits);
		const PropertyReport p = property_degrees(r, System::Sharp);
		ASSERT_EQ(p.reflexivity == 1.0, brute_reflexive(r));
		ASSERT_EQ(p.symmetry == 1.0, brute_symmetric(r));
		ASSERT_EQ(p.transitivity == 1.0, brute_transitive(r));
		ASSERT_TRUE(p.symmetry == 0.0 || p.symmetry == 1.0);
	}
}

TEST(Closure, Examples) {
	const FuzzyRelation chain = sq({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
	EXPECT_EQ(closure(chain, ClosureKind::transitive), sq({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}));

	const FuzzyRelation fuzzy = sq({{0, 0.8, 0}, {0, 0, 0.6}, {0, 0, 0}});
	EXPECT_DOUBLE_EQ(closure(fuzzy, ClosureKind::transitive)(0, 2), 0.6);

	const FuzzyRelation order = sq({{1, 1}, {0, 1}});
	EXPECT_EQ(closure(order, ClosureKind::transitive), order);
	EXPECT_EQ(closure(sq({{0, 0.3}, {0.7, 0}}), ClosureKind::reflexive), sq({{1, 0.3}, {0.7, 1}}));
	EXPECT_EQ(closure(sq({{0, 0.3}, {0.7, 0}}), ClosureKind::symmetric), sq({{0, 0.7}, {0.7, 0}}));
	EXPECT_THROW((void)closure(FuzzyRelation::from_rows({{1, 0}}), ClosureKind::reflexive), ContractError);
}

TEST(Interior, Examples) {
	EXPECT_EQ(interior(sq({{1, 0.8}, {0.2, 1}}), InteriorKind::symmetric), sq({{1, 0.2}, {0.2, 1}}));
	const FuzzyRelation sym = sq({{0.5, 0.3}, {0.3, 1}});
	EXPECT_EQ(interior(sym, InteriorKind::symmetric), sym);
	EXPECT_EQ(interior(sq({{0, 1}, {0, 0}}), InteriorKind::symmetric), sq({{0, 0}, {0, 0}}));
	EXPECT_THROW((void)interior(sym, InteriorKind::transitive), ContractError);
	EXPECT_THROW((void)interior(sym, InteriorKind::reflexive), ContractError);
}

TEST(ClosureProperty, IdempotentAndBracketing) {
	Gen g(41);
	const LabeledSet x = LabeledSet::numbered("x", 5);
	for (int trial = 0; trial < 200; ++trial) {
		const FuzzyRelation r = g.fuzzy(x, x);
		for (auto kind : {ClosureKind::reflexive, ClosureKind::symmetric, ClosureKind::transitive, ClosureKind::preorder}) {
			const FuzzyRelation c = closure(r, kind);
			ASSERT_EQ(closure(c, kind), c);
			ASSERT_EQ(inclusion_degree(r, c, Mode::harsh, System::Sharp), 1.0);
		}
		const FuzzyRelation in = interior(r, InteriorKind::symmetric);
		ASSERT_EQ(inclusion_degree(in, r, Mode::harsh, System::Sharp), 1.0);
		ASSERT_EQ(inclusion_degree(r, closure(r, ClosureKind::symmetric), Mode::harsh, System::Sharp), 1.0);
		ASSERT_TRUE(brute_transitive(closure(r, ClosureKind::transitive)));
	}
}

TEST(Preorder, Examples) {
	const auto order = is_preorder(sq({{1, 1}, {0, 1}}), System::Sharp);
	EXPECT_TRUE(order.holds);
	EXPECT_EQ(order.witness, sq({{1, 1}, {0, 1}}));
	EXPECT_TRUE(is_preorder(FuzzyRelation::identity(LabeledSet{"a", "b"}), System::Sharp).holds);
	EXPECT_FALSE(is_preorder(sq({{0, 1}, {0, 1}}), System::Sharp).holds);
	EXPECT_THROW((void)is_preorder(FuzzyRelation::from_rows({{1, 0}}), System::S), ContractError);
}

TEST(Equivalence, Examples) {
	EXPECT_TRUE(is_equivalence(FuzzyRelation::identity(LabeledSet{"a", "b"}), System::Sharp).holds);
	EXPECT_TRUE(is_equivalence(sq({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}), System::Sharp).holds);
	EXPECT_FALSE(is_equivalence(sq({{1, 1}, {0, 1}}), System::Sharp).holds);
}

// Exhaustive over the 512 crisp relations on three elements.
TEST(PreorderProperty, CrispCriteriaMatchDefinitions) {
	for (unsigned bits = 0; bits < 512; ++bits) {
		const FuzzyRelation r = crisp3(bits);
		const bool pre = brute_reflexive(r) && brute_transitive(r);
		ASSERT_EQ(is_preorder(r, System::Sharp).holds, pre) << bits;
		ASSERT_EQ(is_equivalence(r, System::Sharp).holds, pre && brute_symmetric(r)) << bits;
	}
}

TEST(PreorderProperty, FuzzyPreorderClosuresPassAndPerturbationsFail) {
	Gen g(43);
	const LabeledSet x = LabeledSet::numbered("x", 5);
	for (int trial = 0; trial < 100; ++trial) {
		const FuzzyRelation p = closure(g.fuzzy(x, x), ClosureKind::preorder);
		ASSERT_TRUE(is_preorder(p, System::S).holds);
		const PropertyReport rep = property_degrees(p, System::S);
		ASSERT_EQ(rep.reflexivity, 1.0);
		ASSERT_EQ(rep.transitivity, 1.0);

		// lower an off-diagonal cell below its strongest two-step path
		FuzzyRelation broken = p;
		for (std::size_t i = 0; i < 5; ++i) {
			for (std::size_t k = 0; k < 5; ++k) {
				if (i == k) continue;
				double bound = 0.0;
				for (std::size_t j = 0; j < 5; ++j)
					if (j != i && j != k) bound = std::max(bound, std::min(p(i, j), p(j, k)));
				if (bound > 0.01 && broken == p) broken.set(i, k, bound / 2.0);
			}
		}
		ASSERT_NE(broken, p);
		ASSERT_FALSE(is_preorder(broken, System::S).holds);
	}
}

TEST(ForwardCompatible, Examples) {
	Gen g(47);
	const LabeledSet a = LabeledSet::numbered("a", 3), b = LabeledSet::numbered("b", 2), c = LabeledSet::numbered("c", 3),
	                 d = LabeledSet::numbered("d", 2);
	for (int trial = 0; trial < 50; ++trial) {
		const FuzzyRelation f = g.crisp(a, c), r = g.crisp(a, b), gg = g.crisp(b, d);
		const ProductSpec circ{ProductType::circle, Mode::harsh, System::Sharp};
		const FuzzyRelation s = compose(compose(transpose(f), r, circ), gg, circ);
		const auto res = forward_compatible(f, r, gg, s, System::Sharp);
		EXPECT_TRUE(res.holds);
		EXPECT_TRUE(res.explicit_holds);
		EXPECT_EQ(res.degree, 1.0);
		if (s.mean_degree() > 0.0) {
			const auto empty = forward_compatible(f, r, gg, FuzzyRelation(c, d), System::Sharp);
			EXPECT_FALSE(empty.holds);
			EXPECT_FALSE(empty.explicit_holds);
		}
	}
	const FuzzyRelation f = g.crisp(a, c), r = g.crisp(a, b), gg = g.crisp(b, d);
	EXPECT_THROW((void)forward_compatible(f, r, gg, FuzzyRelation(d, c), System::Sharp), ContractError);
}

// Exhaustive over all 2x2 crisp quadruples: the two criteria always agree.
TEST(ForwardCompatibleProperty, CrispExhaustive2x2) {
	const LabeledSet a{"a1", "a2"}, b{"b1", "b2"}, c{"c1", "c2"}, d{"d1", "d2"};
	auto make = [](const LabeledSet& s, const LabeledSet& t, unsigned bits) {
		return FuzzyRelation(s, t, {double(bits & 1u), double((bits >> 1) & 1u), double((bits >> 2) & 1u),
		                            double((bits >> 3) & 1u)});
	};
	std::size_t compatible = 0;
	for (unsigned q = 0; q < 65536; ++q) {
		const auto res = forward_compatible(make(a, c, q & 15u), make(a, b, (q >> 4) & 15u), make(b, d, (q >> 8) & 15u),
		                                    make(c, d, (q >> 12) & 15u), System::Sharp);
		ASSERT_EQ(res.holds, res.explicit_holds) << q;
		compatible += res.holds ? 1 : 0;
	}
	EXPECT_GT(compatible, 0u);
	EXPECT_LT(compatible, 65536u);
}

TEST(Contrapositive, Examples) {
	// c3 -> c4 -> {c2, c5} -> c7 and its mirror among the negated poles
	const LabeledSet pos{"c2", "c3", "c4", "c5", "c7"};
	const LabeledSet neg{"not_c2", "not_c3", "not_c4", "not_c5", "not_c7"};
	FuzzyRelation p(pos, pos);
	const std::vector<std::pair<int, int>> edges{{1, 2}, {2, 0}, {2, 3}, {0, 3}, {3, 0}, {0, 4}, {3, 4}};
	for (auto [i, j] : edges) p.set(i, j, 1.0);
	p = closure(p, ClosureKind::preorder);
	FuzzyRelation n(neg, neg);
	for (std::size_t i = 0; i < 5; ++i)
		for (std::size_t j = 0; j < 5; ++j) n.set(j, i, p(i, j));
	EXPECT_TRUE(contrapositive_check(p, n).holds);

	const auto none = contrapositive_check(p, FuzzyRelation(neg, neg));
	EXPECT_FALSE(none.holds);
	std::size_t pos_edges = 0;
	for (double v : p.degrees()) pos_edges += v == 1.0 ? 1 : 0;
	EXPECT_EQ(none.violations.size(), pos_edges);

	const FuzzyRelation id = FuzzyRelation::identity(pos);
	EXPECT_TRUE(contrapositive_check(id, id).holds);
	EXPECT_THROW((void)contrapositive_check(id, FuzzyRelation::identity(LabeledSet{"x"})), ContractError);
}
