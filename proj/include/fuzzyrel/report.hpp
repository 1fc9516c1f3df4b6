#pragma once

// JSON and CSV renderings of analysis results. Key order is fixed so that
// output bytes depend only on the inputs.

#include "fuzzyrel/analysis.hpp"
#include "fuzzyrel/csv.hpp"
#include "fuzzyrel/format.hpp"
#include "fuzzyrel/properties.hpp"
#include "fuzzyrel/structure.hpp"

#include <json.hpp>

#include <string>

namespace fuzzyrel::report {

using Json = nlohmann::ordered_json;

[[nodiscard]] inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[nodiscard]] inline Json to_json(const FuzzyRelation& r) {
	Json j;
	j["source"] = r.source().labels();
	j["target"] = r.target().labels();
	Json rows = Json::array();
	for (std::size_t i = 0; i < r.rows(); ++i) {
		rows.push_back(std::vector<double>(r.row(i).begin(), r.row(i).end()));
	}
	j["degrees"] = std::move(rows);
	return j;
}

[[nodiscard]] inline Json to_json(const HasseDiagram& h) {
	Json j;
	j["alpha"] = h.alpha;
	Json classes = Json::array();
	for (std::size_t c = 0; c < h.classes.size(); ++c) {
		classes.push_back(h.class_labels(c));
	}
	j["classes"] = std::move(classes);
	Json covers = Json::array();
	for (auto [a, b] : h.covers) {
		covers.push_back({a, b});
	}
	j["covers"] = std::move(covers);
	j["levels"] = h.levels;
	return j;
}

[[nodiscard]] inline Json to_json(const PropertyReport& p, bool preorder, bool equivalence) {
	Json j;
	j["reflexivity"] = p.reflexivity;
	j["symmetry"] = p.symmetry;
	j["transitivity"] = p.transitivity;
	j["is_preorder"] = preorder;
	j["is_equivalence"] = equivalence;
	return j;
}

[[nodiscard]] inline Json to_json(const std::vector<DependencyEdge>& edges) {
	Json out = Json::array();
	for (const auto& e : edges) {
		Json j;
		j["from"] = e.from;
		j["to"] = e.to;
		j["degree"] = e.degree;
		out.push_back(std::move(j));
	}
	return out;
}

[[nodiscard]] inline Json to_json(const DependencyReport& r) {
	Json j;
	j["alpha"] = r.alpha;
	j["alpha_low"] = r.alpha_low;
	j["relation"] = to_json(r.relation);
	j["hasse"] = to_json(r.hasse);
	j["necessary"] = to_json(r.necessary);
	j["possible"] = to_json(r.possible);
	j["independent"] = to_json(r.independent);
	j["respondent_consistency"] = to_json(r.respondent_consistency);
	j["warnings"] = r.warnings;
	return j;
}

[[nodiscard]] inline Json to_json(const ComparisonReport& r) {
	Json j;
	Json per = Json::array();
	for (const auto& c : r.per_construct) {
		Json e;
		e["id"] = c.id;
		e["similarity"] = c.similarity;
		e["difference"] = c.difference;
		per.push_back(std::move(e));
	}
	j["per_construct"] = std::move(per);
	j["count"] = r.per_construct.size();
	j["mean_difference"] = r.mean_difference;
	j["max_difference"] = r.max_difference;
	j["count_near_max"] = r.count_near_max;
	j["count_near_min"] = r.count_near_min;
	j["count_similar_70"] = r.count_similar_70;
	j["pct_similar_70"] = r.pct_similar_70;
	return j;
}

/// id, similarity, difference per construct.
[[nodiscard]] inline std::string comparison_csv(const ComparisonReport& r) {
	std::string out = "id,similarity,difference\n";
	for (const auto& c : r.per_construct) {
		out += csv::quote(c.id) + "," + format_number(c.similarity) + "," + format_number(c.difference) + "\n";
	}
	return out;
}

/// The summary statistics as measure,value rows.
[[nodiscard]] inline std::string comparison_summary_csv(const ComparisonReport& r) {
	std::string out = "measure,value\n";
	out += "cost_drivers," + std::to_string(r.per_construct.size()) + "\n";
	out += "mean_difference," + format_number(r.mean_difference) + "\n";
	out += "max_difference," + format_number(r.max_difference) + "\n";
	out += "count_near_max," + std::to_string(r.count_near_max) + "\n";
	out += "count_near_min," + std::to_string(r.count_near_min) + "\n";
	out += "count_similar_70," + std::to_string(r.count_similar_70) + "\n";
	out += "pct_similar_70," + format_number(r.pct_similar_70) + "\n";
	return out;
}

[[nodiscard]] inline Json to_json(const ContrapositiveResult& c, const LabeledSet& labels) {
	Json j;
	j["holds"] = c.holds;
	Json v = Json::array();
	for (auto [a, b] : c.violations) {
		v.push_back({labels[a], labels[b]});
	}
	j["violations"] = std::move(v);
	return j;
}

[[nodiscard]] inline Json to_json(const ContextComparison& c) {
	Json j;
	j["shared_ids"] = c.shared_ids;
	j["hasse_a"] = to_json(c.a.hasse);
	j["hasse_b"] = to_json(c.b.hasse);
	Json common = Json::array();
	for (const auto& [x, y] : c.common_edges) {
		common.push_back({x, y});
	}
	j["common_edges"] = std::move(common);
	j["classes_a"] = c.classes_a;
	j["classes_b"] = c.classes_b;
	j["classes_only_a"] = c.classes_only_a;
	j["classes_only_b"] = c.classes_only_b;
	j["contrapositive_a"] = to_json(c.contrapositive_a, c.a.profile.source());
	j["contrapositive_b"] = to_json(c.contrapositive_b, c.b.profile.source());
	return j;
}

[[nodiscard]] inline Json to_json(const FireResult& f) {
	Json j;
	j["normalized"] = to_json(f.normalized);
	j["dropped_columns"] = f.dropped_columns;
	Json systems = Json::array();
	for (const auto& r : f.rankings) {
		Json s;
		s["system"] = std::string(system_name(r.system));
		s["hasse"] = to_json(r.hasse);
		systems.push_back(std::move(s));
	}
	j["systems"] = std::move(systems);
	Json intervals = Json::array();
	for (const auto& ri : f.intervals) {
		Json e;
		e["item"] = ri.item;
		e["low"] = ri.low;
		e["high"] = ri.high;
		Json per;
		for (auto [sys, level] : ri.per_logic_levels) {
			per[std::string(system_name(sys))] = level;
		}
		e["per_logic_levels"] = std::move(per);
		intervals.push_back(std::move(e));
	}
	j["intervals"] = std::move(intervals);
	j["warnings"] = f.warnings;
	return j;
}

/// item, low, high, then one level column per system.
[[nodiscard]] inline std::string ranks_csv(const FireResult& f) {
	std::string out = "item,low,high";
	for (const auto& r : f.rankings) {
		out += "," + csv::quote(system_name(r.system));
	}
	out += "\n";
	for (const auto& ri : f.intervals) {
		out += csv::quote(ri.item) + "," + std::to_string(ri.low) + "," + std::to_string(ri.high);
		for (auto [_, level] : ri.per_logic_levels) {
			out += "," + std::to_string(level);
		}
		out += "\n";
	}
	return out;
}

[[nodiscard]] inline Json to_json(const CostInterval& c) {
	Json j;
	j["low"] = c.low;
	j["high"] = c.high;
	j["plinth"] = c.plinth;
	j["unit"] = c.unit;
	Json per = Json::array();
	for (const auto& cc : c.per_construct) {
		Json e;
		e["id"] = cc.id;
		e["low"] = cc.low;
		e["high"] = cc.high;
		e["weight"] = cc.weight;
		per.push_back(std::move(e));
	}
	j["per_construct"] = std::move(per);
	return j;
}

} // namespace fuzzyrel::report
