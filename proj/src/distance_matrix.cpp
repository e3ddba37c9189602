#include "ripsimage/distance_matrix.hpp"

#include <cmath>
#include <charconv>
#include <string>

namespace ripsimage {

namespace {

// values per non-comment line; '#' cuts the rest of a line, commas count as blanks
std::vector<std::vector<value_t>> tokenize_rows(std::string_view text) {
	std::vector<std::vector<value_t>> rows;
	std::size_t line_start = 0, line_no = 0;
	while (line_start <= text.size()) {
		std::size_t line_end = text.find('\n', line_start);
		if (line_end == std::string_view::npos) line_end = text.size();
		std::string_view line = text.substr(line_start, line_end - line_start);
		++line_no;
		if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		std::vector<value_t> row;
		std::size_t pos = 0;
		auto is_blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; };
		while (pos < line.size()) {
			while (pos < line.size() && is_blank(line[pos])) ++pos;
			if (pos == line.size()) break;
			std::size_t token_end = pos;
			while (token_end < line.size() && !is_blank(line[token_end])) ++token_end;
			std::string_view token = line.substr(pos, token_end - pos);
			value_t v;
			auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
			if (ec != std::errc{} || ptr != token.data() + token.size())
				throw parse_error("line " + std::to_string(line_no) + ": not a number: '" +
				                  std::string(token) + "'");
			if (!std::isfinite(v))
				throw parse_error("line " + std::to_string(line_no) + ": entries must be finite");
			row.push_back(v);
			pos = token_end;
		}
		if (!row.empty()) rows.push_back(std::move(row));
		line_start = line_end + 1;
	}
	return rows;
}

void check_nonnegative(value_t v) {
	if (v < 0) throw parse_error("distances must be nonnegative, got " + std::to_string(v));
}

distance_matrix from_lower_rows(const std::vector<std::vector<value_t>>& rows) {
	index_t n = static_cast<index_t>(rows.size()) + 1;
	distance_matrix dist(n);
	for (index_t i = 1; i < n; ++i) {
		const std::vector<value_t>& row = rows[i - 1];
		if (static_cast<index_t>(row.size()) != i)
			throw parse_error("lower triangle row " + std::to_string(i) + " must hold " +
			                  std::to_string(i) + " entries, got " + std::to_string(row.size()));
		for (index_t j = 0; j < i; ++j) {
			check_nonnegative(row[j]);
			dist.set(i, j, row[j]);
		}
	}
	return dist;
}

distance_matrix from_full_rows(const std::vector<std::vector<value_t>>& rows) {
	index_t n = static_cast<index_t>(rows.size());
	distance_matrix dist(n);
	for (index_t i = 0; i < n; ++i) {
		if (static_cast<index_t>(rows[i].size()) != n)
			throw parse_error("matrix row " + std::to_string(i + 1) + " must hold " +
			                  std::to_string(n) + " entries, got " +
			                  std::to_string(rows[i].size()));
		if (rows[i][i] != 0)
			throw parse_error("matrix diagonal must be zero, row " + std::to_string(i + 1));
	}
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) {
			value_t a = rows[i][j], b = rows[j][i];
			value_t scale = std::max({std::fabs(a), std::fabs(b), value_t(1)});
			if (std::fabs(a - b) > 1e-12 * scale)
				throw parse_error("matrix not symmetric at (" + std::to_string(i) + "," +
				                  std::to_string(j) + "): " + std::to_string(a) + " vs " +
				                  std::to_string(b));
			check_nonnegative(a);
			// the lower triangle is authoritative within the tolerance
			dist.set(i, j, a);
		}
	return dist;
}

distance_matrix from_points(const std::vector<std::vector<value_t>>& rows) {
	index_t n = static_cast<index_t>(rows.size());
	for (index_t i = 1; i < n; ++i)
		if (rows[i].size() != rows[0].size())
			throw parse_error("point row " + std::to_string(i + 1) + " has " +
			                  std::to_string(rows[i].size()) + " coordinates, expected " +
			                  std::to_string(rows[0].size()));
	distance_matrix dist(n);
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) {
			value_t sq = 0;
			for (std::size_t c = 0; c < rows[i].size(); ++c) {
				value_t diff = rows[i][c] - rows[j][c];
				sq += diff * diff;
			}
			dist.set(i, j, std::sqrt(sq));
		}
	return dist;
}

}

distance_matrix distance_matrix::from_lower_triangle(index_t n,
                                                     const std::vector<value_t>& entries) {
	if (static_cast<index_t>(entries.size()) != n * (n - 1) / 2)
		throw std::invalid_argument("lower triangle size mismatch");
	distance_matrix dist(n);
	std::size_t k = 0;
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) dist.set(i, j, entries[k++]);
	return dist;
}

distance_matrix parse_distance_input(std::string_view text, input_format format) {
	std::vector<std::vector<value_t>> rows = tokenize_rows(text);
	switch (format) {
	case input_format::lower_distance: return from_lower_rows(rows);
	case input_format::full_matrix: return from_full_rows(rows);
	case input_format::point_cloud: return from_points(rows);
	}
	throw std::invalid_argument("unknown input format");
}

dominance_report validate_dominance(const distance_matrix& domain,
                                    const distance_matrix& codomain) {
	if (domain.size() != codomain.size())
		throw std::invalid_argument("dissimilarity matrices differ in size: " +
		                            std::to_string(domain.size()) + " vs " +
		                            std::to_string(codomain.size()));
	dominance_report report{true, {}};
	for (index_t i = 1; i < domain.size(); ++i)
		for (index_t j = 0; j < i; ++j)
			if (domain(i, j) < codomain(i, j)) {
				report.ok = false;
				if (report.violations.size() < 10)
					report.violations.push_back({i, j, domain(i, j), codomain(i, j)});
			}
	return report;
}

}
