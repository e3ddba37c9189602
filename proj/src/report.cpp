#include "ripsimage/report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <tuple>

#include "json.hpp"

namespace ripsimage {

namespace {

bool interval_before(const interval& a, const interval& b) {
	return std::tie(a.degree, a.birth, a.death, a.birth_vertices, a.death_vertices) <
	       std::tie(b.degree, b.birth, b.death, b.birth_vertices, b.death_vertices);
}

std::vector<std::tuple<index_t, value_t, value_t>> triples(const barcode& bars) {
	std::vector<std::tuple<index_t, value_t, value_t>> t;
	for (const interval& bar : bars.intervals) t.emplace_back(bar.degree, bar.birth, bar.death);
	std::sort(t.begin(), t.end());
	return t;
}

}

void barcode::sort_canonical() {
	std::sort(intervals.begin(), intervals.end(), interval_before);
}

std::vector<interval> barcode::in_degree(index_t degree) const {
	std::vector<interval> result;
	for (const interval& bar : intervals)
		if (bar.degree == degree) result.push_back(bar);
	return result;
}

bool barcode::same_intervals(const barcode& a, const barcode& b) {
	return triples(a) == triples(b);
}

bool barcode::intervals_included(const barcode& a, const barcode& b) {
	std::vector<std::tuple<index_t, value_t, value_t>> ta = triples(a), tb = triples(b);
	return std::includes(tb.begin(), tb.end(), ta.begin(), ta.end());
}

std::string format_value(value_t v) {
	char buffer[64];
	std::to_chars_result res = std::to_chars(buffer, buffer + sizeof buffer, v);
	return std::string(buffer, res.ptr);
}

namespace {

std::string vertex_list(const std::vector<index_t>& vertices, char separator) {
	std::string out;
	for (std::size_t i = 0; i < vertices.size(); ++i) {
		if (i) out += separator;
		out += std::to_string(vertices[i]);
	}
	return out;
}

void write_text(std::ostream& out, const std::vector<interval>& intervals, bool witnesses) {
	for (const interval& bar : intervals) {
		out << "dim " << bar.degree << ": [" << format_value(bar.birth) << ", ";
		if (!bar.essential()) out << format_value(bar.death);
		out << ")";
		if (witnesses && !bar.birth_vertices.empty())
			out << " birth={" << vertex_list(bar.birth_vertices, ',') << "}";
		if (witnesses && !bar.death_vertices.empty())
			out << " death={" << vertex_list(bar.death_vertices, ',') << "}";
		out << "\n";
	}
}

void write_csv(std::ostream& out, const std::vector<interval>& intervals, bool witnesses) {
	out << "degree,birth,death";
	if (witnesses) out << ",birth_simplex,death_simplex";
	out << "\n";
	for (const interval& bar : intervals) {
		out << bar.degree << "," << format_value(bar.birth) << ",";
		if (!bar.essential()) out << format_value(bar.death);
		if (witnesses)
			out << "," << vertex_list(bar.birth_vertices, ' ') << ","
			    << vertex_list(bar.death_vertices, ' ');
		out << "\n";
	}
}

void write_json(std::ostream& out, const std::vector<interval>& intervals, bool witnesses) {
	nlohmann::ordered_json doc = nlohmann::ordered_json::array();
	for (const interval& bar : intervals) {
		nlohmann::ordered_json item;
		item["degree"] = bar.degree;
		item["birth"] = bar.birth;
		if (bar.essential())
			item["death"] = nullptr;
		else
			item["death"] = bar.death;
		if (witnesses && !bar.birth_vertices.empty()) item["birth_simplex"] = bar.birth_vertices;
		if (witnesses && !bar.death_vertices.empty()) item["death_simplex"] = bar.death_vertices;
		doc.push_back(std::move(item));
	}
	out << doc.dump(1, '\t') << "\n";
}

}

void write_barcode(std::ostream& out, const barcode& bars, output_format format, bool witnesses) {
	std::vector<interval> intervals = bars.intervals;
	std::sort(intervals.begin(), intervals.end(), interval_before);
	switch (format) {
	case output_format::text:
		write_text(out, intervals, witnesses);
		break;
	case output_format::csv:
		write_csv(out, intervals, witnesses);
		break;
	case output_format::json:
		write_json(out, intervals, witnesses);
		break;
	}
}

barcode parse_barcode_json(const std::string& text) {
	nlohmann::json doc = nlohmann::json::parse(text);
	if (!doc.is_array()) throw parse_error("barcode json must be an array");
	barcode bars;
	for (const nlohmann::json& item : doc) {
		interval bar{};
		bar.degree = item.at("degree").get<index_t>();
		bar.birth = item.at("birth").get<value_t>();
		bar.death =
		    item.at("death").is_null() ? infinite_value : item.at("death").get<value_t>();
		if (item.contains("birth_simplex"))
			bar.birth_vertices = item["birth_simplex"].get<std::vector<index_t>>();
		if (item.contains("death_simplex"))
			bar.death_vertices = item["death_simplex"].get<std::vector<index_t>>();
		bars.intervals.push_back(std::move(bar));
	}
	return bars;
}

}
