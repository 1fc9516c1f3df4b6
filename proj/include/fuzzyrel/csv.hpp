#pragma once

/**
 * @file
 *
 * CSV reading/writing for relations and value tables.
 *
 * Relation files: the first row holds the target labels after an empty
 * leading cell, every following row a source label and its degrees.
 * Fields may be double-quoted; '.' is the decimal separator.
 */

#include "fuzzyrel/error.hpp"
#include "fuzzyrel/format.hpp"
#include "fuzzyrel/relation.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyrel::csv {

using Row = std::vector<std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
	return s;
}

} // namespace detail

/// Splits one line into fields, honoring "..." quoting with "" escapes.
[[nodiscard]] inline Row split_line(std::string_view line, std::size_t line_no) {
	Row fields;
	std::string cur;
	bool quoted = false;
	bool was_quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char c = line[i];
		if (quoted) {
			if (c == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					cur += '"';
					++i;
				} else {
					quoted = false;
				}
			} else {
				cur += c;
			}
		} else if (c == '"') {
			quoted = true;
			was_quoted = true;
		} else if (c == ',') {
			fields.push_back(was_quoted ? cur : std::string(detail::trim(cur)));
			cur.clear();
			was_quoted = false;
		} else {
			cur += c;
		}
	}
	if (quoted) {
		throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
	}
	fields.push_back(was_quoted ? cur : std::string(detail::trim(cur)));
	return fields;
}

/// Non-blank lines of a document, with their 1-based line numbers.
[[nodiscard]] inline std::vector<std::pair<std::size_t, Row>> read_rows(std::string_view text) {
	std::vector<std::pair<std::size_t, Row>> rows;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	if (text.starts_with("\xEF\xBB\xBF")) {
		pos = 3;
	}
	while (pos <= text.size()) {
		const std::size_t nl = text.find('\n', pos);
		std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
		++line_no;
		if (!detail::trim(line).empty()) {
			rows.emplace_back(line_no, split_line(line, line_no));
		}
		if (nl == std::string_view::npos) {
			break;
		}
		pos = nl + 1;
	}
	return rows;
}

/// Parses a decimal cell; a trailing '%' is accepted and kept as the plain
/// number (so "1.20%" reads as 1.2).
[[nodiscard]] inline double parse_number(std::string_view cell, std::size_t line_no, std::size_t col) {
	std::string_view s = detail::trim(cell);
	if (!s.empty() && s.back() == '%') {
		s.remove_suffix(1);
	}
	if (!s.empty() && s.front() == '+') {
		s.remove_prefix(1);
	}
	double v = 0.0;
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
		throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(col) +
		                 ": non-numeric cell '" + std::string(cell) + "'");
	}
	return v;
}

[[nodiscard]] inline std::string quote(std::string_view field) {
	if (field.find_first_of(",\"\n") == std::string_view::npos && detail::trim(field) == field) {
		return std::string(field);
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') out += '"';
		out += c;
	}
	return out + '"';
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open '" + path + "'");
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

/// Items-by-columns numeric table with named rows and columns.
struct ValueTable {
	std::vector<std::string> items;
	std::vector<std::string> columns;
	std::vector<std::vector<double>> values; ///< values[item][column]
};

[[nodiscard]] inline ValueTable parse_value_table(std::string_view text) {
	auto rows = read_rows(text);
	if (rows.empty()) {
		throw ParseError("empty table");
	}
	ValueTable t;
	const auto& [header_line, header] = rows.front();
	if (header.size() < 2) {
		throw ParseError("line " + std::to_string(header_line) + ": header needs at least one column name");
	}
	t.columns.assign(header.begin() + 1, header.end());
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto& [line_no, row] = rows[r];
		if (row.size() != header.size()) {
			throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
			                 " fields, found " + std::to_string(row.size()));
		}
		t.items.push_back(row[0]);
		std::vector<double> vals;
		for (std::size_t c = 1; c < row.size(); ++c) {
			vals.push_back(parse_number(row[c], line_no, c + 1));
		}
		t.values.push_back(std::move(vals));
	}
	return t;
}

[[nodiscard]] inline FuzzyRelation parse_relation(std::string_view text) {
	auto rows = read_rows(text);
	if (rows.size() < 2) {
		throw ParseError("relation needs a header row and at least one data row");
	}
	const auto& [header_line, header] = rows.front();
	if (header.size() < 2) {
		throw ParseError("line " + std::to_string(header_line) + ": header needs at least one target label");
	}
	std::vector<std::string> targets(header.begin() + 1, header.end());
	std::vector<std::string> sources;
	std::vector<double> degrees;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto& [line_no, row] = rows[r];
		if (row.size() != header.size()) {
			throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
			                 " fields, found " + std::to_string(row.size()));
		}
		sources.push_back(row[0]);
		for (std::size_t c = 1; c < row.size(); ++c) {
			const double d = parse_number(row[c], line_no, c + 1);
			if (!(d >= 0.0 && d <= 1.0)) {
				throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
				                 ": degree " + std::string(row[c]) + " outside [0,1]");
			}
			degrees.push_back(d);
		}
	}
	try {
		return FuzzyRelation(LabeledSet(std::move(sources)), LabeledSet(std::move(targets)), std::move(degrees));
	} catch (const ContractError& e) {
		throw ParseError(e.what());
	}
}

[[nodiscard]] inline std::string write_relation(const FuzzyRelation& r) {
	std::string out;
	for (const auto& label : r.target()) {
		out += ',';
		out += quote(label);
	}
	out += '\n';
	for (std::size_t i = 0; i < r.rows(); ++i) {
		out += quote(r.source()[i]);
		for (std::size_t j = 0; j < r.cols(); ++j) {
			out += ',';
			out += format_number(r(i, j));
		}
		out += '\n';
	}
	return out;
}

} // namespace fuzzyrel::csv
