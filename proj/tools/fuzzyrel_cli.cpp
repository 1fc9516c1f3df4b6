// fuzzyrel: command-line front end.
//
//   fuzzyrel analyze  GRID            -> report.json, hasse.dot
//   fuzzyrel compare  GRID_A GRID_B   -> comparison.csv, comparison_summary.csv, comparison.json
//   fuzzyrel contexts GRID_A GRID_B   -> contexts.json, hasse_a.dot, hasse_b.dot
//   fuzzyrel rank     VALUES_CSV      -> hasse_<system>.dot, ranks.csv, ranks.json
//   fuzzyrel cost     GRID            -> cost.json
//   fuzzyrel props    RELATION_CSV    -> props.json
//
// Exit codes: 0 success, 2 input/parse error, 3 contract violation,
// 4 internal error.

#include <fuzzyrel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fuzzyrel;

namespace {

enum ExitCode { exit_ok = 0, exit_input = 2, exit_contract = 3, exit_internal = 4 };

/// Raw option values as given on the command line; unset means "not given".
struct Flags {
	std::optional<std::string> system;
	std::optional<std::string> mode;
	std::optional<std::string> alpha;
	std::optional<double> alpha_low;
	std::optional<std::string> scale_map;
	std::vector<std::string> polarity;
	std::optional<std::string> systems;
	std::optional<std::string> out_dir;
	std::optional<std::string> format;
	std::vector<std::string> weights;
	std::optional<std::string> config;
	unsigned threads = 1;
};

struct RunConfig {
	System system = System::L;
	Mode mode = Mode::mean;
	AlphaPolicy alpha = AlphaPolicy::mean();
	std::optional<double> alpha_low;
	ScaleMap scale_map = affine7();
	std::map<std::string, Polarity> polarity;
	std::vector<System> systems{System::L, System::KDL, System::KD};
	fs::path out_dir = ".";
	std::optional<std::string> format;
	std::optional<std::map<std::string, double>> weights;
	unsigned threads = 1;
};

System system_or_throw(const std::string& name) {
	if (auto s = parse_system(name)) return *s;
	throw ContractError("unknown system '" + name + "' (expected L, KD, KDL, S, S#, G43 or G43c)");
}

Polarity polarity_or_throw(const std::string& v) {
	if (v == "hi" || v == "higher") return Polarity::higher;
	if (v == "lo" || v == "lower") return Polarity::lower;
	throw ContractError("polarity must be hi or lo, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
	std::vector<std::string> out;
	std::string cur;
	for (char c : s) {
		if (c == sep) {
			out.push_back(cur);
			cur.clear();
		} else {
			cur += c;
		}
	}
	out.push_back(cur);
	return out;
}

std::pair<std::string, std::string> key_value(const std::string& s, const char* what) {
	const auto eq = s.find('=');
	if (eq == std::string::npos || eq == 0) {
		throw ContractError(std::string(what) + " must look like name=value, got '" + s + "'");
	}
	return {s.substr(0, eq), s.substr(eq + 1)};
}

/// Defaults, overridden by the config file, overridden by flags.
RunConfig resolve_config(const Flags& f) {
	RunConfig rc;
	nlohmann::json file;
	if (f.config) {
		try {
			file = nlohmann::json::parse(csv::read_file(*f.config));
		} catch (const nlohmann::json::exception& e) {
			throw ParseError(*f.config + ": " + e.what());
		}
		if (!file.is_object()) throw ParseError(*f.config + ": config must be a JSON object");
	}
	auto from_file = [&](const char* key) -> const nlohmann::json* {
		return file.is_object() && file.contains(key) ? &file[key] : nullptr;
	};
	auto file_string = [&](const char* key) -> std::optional<std::string> {
		if (auto* v = from_file(key)) {
			if (v->is_string()) return v->get<std::string>();
			if (v->is_number()) return v->dump();
			throw ParseError(std::string("config key '") + key + "' has the wrong type");
		}
		return std::nullopt;
	};

	if (auto s = f.system ? f.system : file_string("system")) rc.system = system_or_throw(*s);
	if (auto m = f.mode ? f.mode : file_string("mode")) {
		auto mode = parse_mode(*m);
		if (!mode) throw ContractError("mode must be harsh or mean, got '" + *m + "'");
		rc.mode = *mode;
	}
	if (auto a = f.alpha ? f.alpha : file_string("alpha")) rc.alpha = AlphaPolicy::parse(*a);
	if (f.alpha_low) {
		rc.alpha_low = *f.alpha_low;
	} else if (auto* v = from_file("alpha_low"); v && v->is_number()) {
		rc.alpha_low = v->get<double>();
	}
	if (rc.alpha_low && !(*rc.alpha_low >= 0.0 && *rc.alpha_low <= 1.0)) {
		throw ContractError("alpha_low out of range");
	}
	if (auto a = rc.alpha.fixed(); a && rc.alpha_low && *rc.alpha_low >= *a && *a > 0.0) {
		throw ContractError("alpha_low must be below alpha");
	}
	if (auto sm = f.scale_map ? f.scale_map : file_string("scale_map")) rc.scale_map = scale_map_named(*sm);

	if (auto* v = from_file("polarity"); v && v->is_object()) {
		for (const auto& [k, val] : v->items()) rc.polarity[k] = polarity_or_throw(val.get<std::string>());
	}
	for (const auto& p : f.polarity) {
		auto [col, val] = key_value(p, "--polarity");
		rc.polarity[col] = polarity_or_throw(val);
	}

	std::optional<std::vector<std::string>> systems;
	if (f.systems) {
		systems = split(*f.systems, ',');
	} else if (auto* v = from_file("systems"); v && v->is_array()) {
		systems = v->get<std::vector<std::string>>();
	}
	if (systems) {
		rc.systems.clear();
		for (const auto& s : *systems) rc.systems.push_back(system_or_throw(s));
	}

	if (auto o = f.out_dir ? f.out_dir : file_string("out_dir")) rc.out_dir = *o;
	rc.format = f.format ? f.format : file_string("format");
	if (rc.format && *rc.format != "json" && *rc.format != "csv" && *rc.format != "dot") {
		throw ContractError("format must be json, csv or dot");
	}
	if (!f.weights.empty()) {
		rc.weights.emplace();
		for (const auto& w : f.weights) {
			auto [id, val] = key_value(w, "--weight");
			double x = 0.0;
			try {
				x = std::stod(val);
			} catch (const std::exception&) {
				throw ContractError("weight of '" + id + "' is not a number");
			}
			(*rc.weights)[id] = x;
		}
	}
	rc.threads = std::max(1u, f.threads);
	return rc;
}

class Output {
public:
	explicit Output(const RunConfig& rc) : rc_(rc) {}

	void write(const std::string& name, const std::string& content) const {
		const std::string ext = fs::path(name).extension().string();
		if (rc_.format && ext != "." + *rc_.format) return;
		fs::create_directories(rc_.out_dir);
		const fs::path path = rc_.out_dir / name;
		std::ofstream out(path, std::ios::binary);
		if (!out) throw ParseError("cannot write '" + path.string() + "'");
		out << content;
	}

private:
	const RunConfig& rc_;
};

DependencyPolicy dependency_policy(const RunConfig& rc) {
	return DependencyPolicy{rc.system, rc.mode, rc.alpha, rc.alpha_low};
}

void warn(const std::vector<std::string>& warnings) {
	for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_analyze(const std::string& grid_path, const RunConfig& rc) {
	const RepertoryGrid g = load_grid(grid_path);
	const DependencyReport rep = dependency_analysis(g, dependency_policy(rc), rc.scale_map, rc.threads);
	warn(rep.warnings);
	report::Json j;
	j["object"] = g.object;
	j["context"] = g.context;
	j["system"] = std::string(system_name(rc.system));
	j["mode"] = std::string(mode_name(rc.mode));
	j["alpha_policy"] = rc.alpha.to_string();
	j["report"] = report::to_json(rep);
	Output out(rc);
	out.write("report.json", report::dump(j));
	out.write("hasse.dot", to_dot(rep.hasse, g.object + " / " + g.context));
	return exit_ok;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const RunConfig& rc) {
	const RepertoryGrid a = load_grid(a_path);
	const RepertoryGrid b = load_grid(b_path);
	const ComparisonReport rep = compare_objects(a, b, rc.scale_map);
	Output out(rc);
	out.write("comparison.csv", report::comparison_csv(rep));
	out.write("comparison_summary.csv", report::comparison_summary_csv(rep));
	out.write("comparison.json", report::dump(report::to_json(rep)));
	return exit_ok;
}

int cmd_contexts(const std::string& a_path, const std::string& b_path, const RunConfig& rc) {
	const RepertoryGrid a = load_grid(a_path);
	const RepertoryGrid b = load_grid(b_path);
	const ContextComparison cmp = compare_contexts(a, b, dependency_policy(rc), rc.scale_map);
	report::Json j;
	j["context_a"] = a.context;
	j["context_b"] = b.context;
	j["comparison"] = report::to_json(cmp);
	Output out(rc);
	out.write("contexts.json", report::dump(j));
	out.write("hasse_a.dot", to_dot(cmp.a.hasse, a.context));
	out.write("hasse_b.dot", to_dot(cmp.b.hasse, b.context));
	return exit_ok;
}

int cmd_rank(const std::string& values_path, const RunConfig& rc) {
	const csv::ValueTable table = csv::parse_value_table(csv::read_file(values_path));
	FirePolicy policy;
	policy.systems = rc.systems;
	policy.alpha = rc.alpha;
	policy.mode = rc.mode;
	policy.polarity = rc.polarity;
	const FireResult res = fire_ranking(table, policy, rc.threads);
	warn(res.warnings);
	Output out(rc);
	for (const auto& r : res.rankings) {
		const std::string name(system_name(r.system));
		out.write("hasse_" + name + ".dot", to_dot(r.hasse, name));
	}
	out.write("ranks.csv", report::ranks_csv(res));
	out.write("ranks.json", report::dump(report::to_json(res)));
	return exit_ok;
}

int cmd_cost(const std::string& grid_path, const RunConfig& rc) {
	const RepertoryGrid g = load_grid(grid_path);
	const CostInterval c = cost_interval(g, rc.weights, rc.scale_map);
	Output(rc).write("cost.json", report::dump(report::to_json(c)));
	return exit_ok;
}

int cmd_props(const std::string& relation_path, const RunConfig& rc) {
	const FuzzyRelation r = csv::parse_relation(csv::read_file(relation_path));
	const PropertyReport p = property_degrees(r, rc.system);
	const bool pre = is_preorder(r, rc.system).holds;
	const bool eq = is_equivalence(r, rc.system).holds;
	Output(rc).write("props.json", report::dump(report::to_json(p, pre, eq)));
	return exit_ok;
}

void add_common(CLI::App* cmd, Flags& f) {
	cmd->add_option("--system", f.system, "Connective system: L, KD, KDL, S, S#, G43, G43c");
	cmd->add_option("--mode", f.mode, "Product mode: harsh or mean");
	cmd->add_option("--alpha", f.alpha, "Alpha-cut level in [0,1] or 'mean'");
	cmd->add_option("--alpha-low", f.alpha_low, "Independence threshold (default alpha/2)");
	cmd->add_option("--scale-map", f.scale_map, "Scale-to-membership map (affine7)");
	cmd->add_option("--polarity", f.polarity, "Column polarity col=hi|lo (repeatable)");
	cmd->add_option("--systems", f.systems, "Comma-separated systems for rank (default L,KDL,KD)");
	cmd->add_option("--weight", f.weights, "Construct weight id=w for cost (repeatable)");
	cmd->add_option("--out-dir", f.out_dir, "Output directory (default .)");
	cmd->add_option("--format", f.format, "Only write outputs of this format: json, csv or dot");
	cmd->add_option("--config", f.config, "JSON config file; flags take precedence");
	cmd->add_option("--threads", f.threads, "Worker threads");
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Fuzzy relational analysis of repertory grids and value tables"};
	app.require_subcommand(1);
	Flags flags;
	std::vector<std::string> inputs;

	struct Command {
		const char* name;
		const char* help;
		std::size_t arity;
	};
	const Command commands[] = {
	    {"analyze", "Dependency analysis of one grid", 1},
	    {"compare", "Compare two objects over the same constructs", 2},
	    {"contexts", "Compare shared constructs across two contexts", 2},
	    {"rank", "Interval ranking of items in a value table", 1},
	    {"cost", "Interval bounds of the aggregated cost of a grid", 1},
	    {"props", "Relational properties of a relation CSV", 1},
	};
	for (const auto& c : commands) {
		CLI::App* sub = app.add_subcommand(c.name, c.help);
		sub->add_option("inputs", inputs, "Input file(s)")->required()->expected(static_cast<int>(c.arity));
		add_common(sub, flags);
	}

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int rc = app.exit(e);
		return rc == 0 ? exit_ok : exit_input;
	}

	const std::string name = app.get_subcommands().front()->get_name();
	try {
		const RunConfig rc = resolve_config(flags);
		if (name == "analyze") return cmd_analyze(inputs.at(0), rc);
		if (name == "compare") return cmd_compare(inputs.at(0), inputs.at(1), rc);
		if (name == "contexts") return cmd_contexts(inputs.at(0), inputs.at(1), rc);
		if (name == "rank") return cmd_rank(inputs.at(0), rc);
		if (name == "cost") return cmd_cost(inputs.at(0), rc);
		if (name == "props") return cmd_props(inputs.at(0), rc);
	} catch (const ParseError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_input;
	} catch (const ContractError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_contract;
	} catch (const std::exception& e) {
		std::cerr << "internal error: " << e.what() << "\n";
		return exit_internal;
	}
	return exit_internal;
}
