#pragma once

/**
 * @file
 *
 * Repertory grids: bipolar constructs rated by respondents on the 7-point
 * scale +3 (primary pole) ... -3 (secondary pole).
 *
 * On-disk form is a JSON document:
 *
 *   { "object": "...", "context": "...",
 *     "constructs": [ { "id": "c1",
 *                       "primary":   { "text": "...", "value": 15, "unit": "%" },
 *                       "secondary": { "text": "...", "value": 30, "unit": "%" } } ],
 *     "assessments": [ { "respondent": "r1", "construct": "c1", "scale": -2 } ] }
 *
 * "value" and "unit" are optional per pole.
 */

#include "fuzzyrel/csv.hpp"
#include "fuzzyrel/error.hpp"
#include "fuzzyrel/relation.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fuzzyrel {

inline constexpr int scale_min = -3;
inline constexpr int scale_max = 3;

struct Pole {
	std::string text;
	std::optional<double> value;
	std::optional<std::string> unit;

	friend bool operator==(const Pole&, const Pole&) = default;
};

struct Construct {
	std::string id;
	Pole primary;
	Pole secondary;

	[[nodiscard]] bool numeric() const noexcept { return primary.value && secondary.value; }

	friend bool operator==(const Construct&, const Construct&) = default;
};

struct Assessment {
	std::string respondent;
	std::string construct;
	int scale = 0;

	friend bool operator==(const Assessment&, const Assessment&) = default;
};

/// Scale-to-membership conversion, selectable by name.
struct ScaleMap {
	std::string name;
	std::function<double(int)> membership;
};

/// (s + 3) / 6: the primary pole maps to 1, the secondary pole to 0.
[[nodiscard]] inline ScaleMap affine7() {
	return {"affine7", [](int s) { return static_cast<double>(s - scale_min) / (scale_max - scale_min); }};
}

[[nodiscard]] inline ScaleMap scale_map_named(std::string_view name) {
	if (name == "affine7") {
		return affine7();
	}
	throw ContractError("unknown scale map '" + std::string(name) + "'");
}

class RepertoryGrid {
public:
	std::string object;
	std::string context;
	std::vector<Construct> constructs;
	std::vector<Assessment> assessments;

	/// Checks ids, scales, and references; throws ParseError with the
	/// offending field path.
	void validate() const {
		if (constructs.empty()) {
			throw ParseError("no constructs");
		}
		std::set<std::string> ids;
		for (std::size_t i = 0; i < constructs.size(); ++i) {
			if (constructs[i].id.empty()) {
				throw ParseError("constructs[" + std::to_string(i) + "].id: empty id");
			}
			if (!ids.insert(constructs[i].id).second) {
				throw ParseError("constructs[" + std::to_string(i) + "].id: duplicate construct id '" +
				                 constructs[i].id + "'");
			}
		}
		if (assessments.empty()) {
			throw ParseError("no assessments (at least one respondent required)");
		}
		std::set<std::pair<std::string, std::string>> seen;
		for (std::size_t i = 0; i < assessments.size(); ++i) {
			const auto& a = assessments[i];
			const std::string where = "assessments[" + std::to_string(i) + "]";
			if (a.scale < scale_min || a.scale > scale_max) {
				throw ParseError(where + ".scale: scale out of range (" + std::to_string(a.scale) + ")");
			}
			if (!ids.contains(a.construct)) {
				throw ParseError(where + ".construct: unknown construct id '" + a.construct + "'");
			}
			if (!seen.emplace(a.respondent, a.construct).second) {
				throw ParseError(where + ": duplicate assessment of '" + a.construct + "' by '" + a.respondent + "'");
			}
		}
	}

	/// Respondents in order of first appearance.
	[[nodiscard]] std::vector<std::string> respondents() const {
		std::vector<std::string> out;
		for (const auto& a : assessments) {
			if (std::find(out.begin(), out.end(), a.respondent) == out.end()) {
				out.push_back(a.respondent);
			}
		}
		return out;
	}

	[[nodiscard]] std::vector<std::string> construct_ids() const {
		std::vector<std::string> out;
		for (const auto& c : constructs) out.push_back(c.id);
		return out;
	}

	[[nodiscard]] const Construct& construct(std::string_view id) const {
		for (const auto& c : constructs) {
			if (c.id == id) return c;
		}
		throw ContractError("unknown construct '" + std::string(id) + "'");
	}

	/// Copy keeping only the listed constructs (in the given order) and their
	/// assessments.
	[[nodiscard]] RepertoryGrid restricted_to(const std::vector<std::string>& ids) const {
		RepertoryGrid g;
		g.object = object;
		g.context = context;
		for (const auto& id : ids) {
			g.constructs.push_back(construct(id));
		}
		for (const auto& a : assessments) {
			if (std::find(ids.begin(), ids.end(), a.construct) != ids.end()) {
				g.assessments.push_back(a);
			}
		}
		return g;
	}

	friend bool operator==(const RepertoryGrid&, const RepertoryGrid&) = default;
};

namespace detail {

inline Pole pole_from_json(const nlohmann::json& j, const std::string& where) {
	if (!j.is_object()) {
		throw ParseError(where + ": expected an object");
	}
	Pole p;
	if (!j.contains("text") || !j["text"].is_string()) {
		throw ParseError(where + ".text: missing or not a string");
	}
	p.text = j["text"].get<std::string>();
	if (j.contains("value") && !j["value"].is_null()) {
		if (!j["value"].is_number()) {
			throw ParseError(where + ".value: not a number");
		}
		p.value = j["value"].get<double>();
	}
	if (j.contains("unit") && !j["unit"].is_null()) {
		if (!j["unit"].is_string()) {
			throw ParseError(where + ".unit: not a string");
		}
		p.unit = j["unit"].get<std::string>();
	}
	return p;
}

inline nlohmann::ordered_json pole_to_json(const Pole& p) {
	nlohmann::ordered_json j;
	j["text"] = p.text;
	if (p.value) j["value"] = *p.value;
	if (p.unit) j["unit"] = *p.unit;
	return j;
}

inline std::string required_string(const nlohmann::json& j, const char* key, const std::string& where) {
	if (!j.contains(key) || !j[key].is_string()) {
		throw ParseError(where + "." + key + ": missing or not a string");
	}
	return j[key].get<std::string>();
}

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
	offset = std::min(offset, text.size());
	return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

} // namespace detail

[[nodiscard]] inline RepertoryGrid parse_grid(std::string_view document) {
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(document);
	} catch (const nlohmann::json::parse_error& e) {
		throw ParseError("line " + std::to_string(detail::line_of_offset(document, e.byte)) + ": malformed JSON: " +
		                 e.what());
	}
	if (!j.is_object()) {
		throw ParseError("grid document must be a JSON object");
	}
	RepertoryGrid g;
	g.object = detail::required_string(j, "object", "grid");
	g.context = detail::required_string(j, "context", "grid");
	if (!j.contains("constructs") || !j["constructs"].is_array()) {
		throw ParseError("grid.constructs: missing or not an array");
	}
	for (std::size_t i = 0; i < j["constructs"].size(); ++i) {
		const auto& c = j["constructs"][i];
		const std::string where = "constructs[" + std::to_string(i) + "]";
		if (!c.is_object()) {
			throw ParseError(where + ": expected an object");
		}
		Construct con;
		con.id = detail::required_string(c, "id", where);
		if (!c.contains("primary")) throw ParseError(where + ".primary: missing");
		if (!c.contains("secondary")) throw ParseError(where + ".secondary: missing");
		con.primary = detail::pole_from_json(c["primary"], where + ".primary");
		con.secondary = detail::pole_from_json(c["secondary"], where + ".secondary");
		g.constructs.push_back(std::move(con));
	}
	if (!j.contains("assessments") || !j["assessments"].is_array()) {
		throw ParseError("grid.assessments: missing or not an array");
	}
	for (std::size_t i = 0; i < j["assessments"].size(); ++i) {
		const auto& a = j["assessments"][i];
		const std::string where = "assessments[" + std::to_string(i) + "]";
		if (!a.is_object()) {
			throw ParseError(where + ": expected an object");
		}
		Assessment as;
		as.respondent = detail::required_string(a, "respondent", where);
		as.construct = detail::required_string(a, "construct", where);
		if (!a.contains("scale") || !a["scale"].is_number_integer()) {
			throw ParseError(where + ".scale: missing or not an integer");
		}
		const auto raw = a["scale"].get<long long>();
		if (raw < scale_min || raw > scale_max) {
			throw ParseError(where + ".scale: scale out of range (" + std::to_string(raw) + ")");
		}
		as.scale = static_cast<int>(raw);
		g.assessments.push_back(std::move(as));
	}
	g.validate();
	return g;
}

[[nodiscard]] inline RepertoryGrid load_grid(const std::string& path) {
	try {
		return parse_grid(csv::read_file(path));
	} catch (const ParseError& e) {
		const std::string msg = e.what();
		if (msg.starts_with("cannot open")) throw;
		throw ParseError(path + ": " + msg);
	}
}

/// Canonical JSON form (keys in fixed order, two-space indent).
[[nodiscard]] inline std::string serialize_grid(const RepertoryGrid& g) {
	nlohmann::ordered_json j;
	j["object"] = g.object;
	j["context"] = g.context;
	j["constructs"] = nlohmann::ordered_json::array();
	for (const auto& c : g.constructs) {
		nlohmann::ordered_json cj;
		cj["id"] = c.id;
		cj["primary"] = detail::pole_to_json(c.primary);
		cj["secondary"] = detail::pole_to_json(c.secondary);
		j["constructs"].push_back(std::move(cj));
	}
	j["assessments"] = nlohmann::ordered_json::array();
	for (const auto& a : g.assessments) {
		nlohmann::ordered_json aj;
		aj["respondent"] = a.respondent;
		aj["construct"] = a.construct;
		aj["scale"] = a.scale;
		j["assessments"].push_back(std::move(aj));
	}
	return j.dump(2) + "\n";
}

/// Constructs x respondents membership matrix. Every (respondent, construct)
/// cell must be assessed.
[[nodiscard]] inline FuzzyRelation to_profile_matrix(const RepertoryGrid& g, const ScaleMap& map = affine7()) {
	const LabeledSet constructs(g.construct_ids());
	const LabeledSet respondents(g.respondents());
	std::vector<double> degrees(constructs.size() * respondents.size(), -1.0);
	for (const auto& a : g.assessments) {
		const auto i = constructs.find(a.construct);
		if (!i) {
			throw ContractError("unknown construct id '" + a.construct + "'");
		}
		degrees[*i * respondents.size() + *respondents.find(a.respondent)] = map.membership(a.scale);
	}
	for (std::size_t i = 0; i < constructs.size(); ++i) {
		for (std::size_t r = 0; r < respondents.size(); ++r) {
			if (degrees[i * respondents.size() + r] < 0.0) {
				throw ContractError("missing assessment of '" + constructs[i] + "' by '" + respondents[r] + "'");
			}
		}
	}
	return FuzzyRelation(constructs, respondents, std::move(degrees));
}

inline constexpr std::string_view negation_prefix = "not_";

[[nodiscard]] inline std::string negated_id(std::string_view id) {
	if (id.starts_with(negation_prefix)) {
		return std::string(id.substr(negation_prefix.size()));
	}
	return std::string(negation_prefix) + std::string(id);
}

/// Swaps poles and mirrors every scale value; ids toggle the "not_" prefix
/// so that negating twice restores the original grid.
[[nodiscard]] inline RepertoryGrid negate_grid(const RepertoryGrid& g) {
	RepertoryGrid out;
	out.object = g.object;
	out.context = g.context;
	for (const auto& c : g.constructs) {
		out.constructs.push_back({negated_id(c.id), c.secondary, c.primary});
	}
	for (const auto& a : g.assessments) {
		out.assessments.push_back({a.respondent, negated_id(a.construct), -a.scale});
	}
	return out;
}

} // namespace fuzzyrel
