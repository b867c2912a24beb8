#include "tropmed/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tropmed {

namespace {

// Content lines with their 1-based numbers; comments and blanks dropped.
std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    size_t last = line.find_last_not_of(" \t\r");
    lines.emplace_back(number, line.substr(first, last - first + 1));
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  char sep = ' ';
  if (line.find('\t') != std::string::npos)
    sep = '\t';
  else if (line.find(',') != std::string::npos)
    sep = ',';
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  if (sep == ' ') {
    while (stream >> field) fields.push_back(field);
  } else {
    while (std::getline(stream, field, sep)) fields.push_back(field);
  }
  return fields;
}

[[noreturn]] void line_error(int line, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

}  // namespace

SiteMatrix read_site_matrix(std::istream& in, bool skip_header) {
  auto lines = content_lines(in);
  if (skip_header && !lines.empty()) lines.erase(lines.begin());
  std::vector<std::vector<Rat>> rows;
  for (const auto& [number, line] : lines) {
    std::vector<Rat> row;
    for (const std::string& field : split_fields(line)) {
      try {
        row.push_back(parse_rational(field));
      } catch (const std::invalid_argument& e) {
        line_error(number, e.what());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      line_error(number, "row length differs from the first row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("no sites in input");
  return SiteMatrix(std::move(rows));
}

std::vector<PhyloTree> read_newick_file(std::istream& in) {
  std::vector<PhyloTree> trees;
  for (const auto& [number, line] : content_lines(in)) {
    try {
      trees.push_back(parse_newick(line));
    } catch (const std::invalid_argument& e) {
      line_error(number, e.what());
    }
  }
  if (trees.empty()) throw std::invalid_argument("no trees in input");
  return trees;
}

std::vector<Int> read_weights(std::istream& in) {
  std::vector<Int> weights;
  for (const auto& [number, line] : content_lines(in)) {
    for (const std::string& field : split_fields(line)) {
      Rat value;
      try {
        value = parse_rational(field);
      } catch (const std::invalid_argument& e) {
        line_error(number, e.what());
      }
      if (denominator(value) != 1 || value <= 0)
        line_error(number, "weights must be positive integers");
      weights.push_back(numerator(value));
    }
  }
  if (weights.empty()) throw std::invalid_argument("no weights in input");
  return weights;
}

void write_ultrametric_csv(std::ostream& out,
                           const std::vector<Ultrametric>& rows) {
  if (rows.empty()) throw std::invalid_argument("nothing to write");
  const auto& taxa = rows[0].taxa;
  const int n = static_cast<int>(taxa.size());
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!first) out << ',';
      first = false;
      out << taxa[i] << '|' << taxa[j];
    }
  out << '\n';
  for (const Ultrametric& u : rows) {
    if (u.taxa != taxa)
      throw std::invalid_argument("taxa sets differ between rows");
    out << format_vector(u.d, ",") << '\n';
  }
}

std::vector<Ultrametric> read_ultrametric_csv(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty()) throw std::invalid_argument("empty ultrametric file");

  std::vector<std::string> taxa;
  {
    auto fields = split_fields(lines[0].second);
    for (const std::string& field : fields) {
      auto bar = field.find('|');
      if (bar == std::string::npos)
        line_error(lines[0].first, "header field without '|': " + field);
      std::string a = field.substr(0, bar);
      std::string b = field.substr(bar + 1);
      if (std::find(taxa.begin(), taxa.end(), a) == taxa.end())
        taxa.push_back(a);
      if (std::find(taxa.begin(), taxa.end(), b) == taxa.end())
        taxa.push_back(b);
    }
    if (!std::is_sorted(taxa.begin(), taxa.end()))
      line_error(lines[0].first, "header pairs are not in lexicographic order");
    size_t expect = taxa.size() * (taxa.size() - 1) / 2;
    if (fields.size() != expect)
      line_error(lines[0].first, "header does not list all taxon pairs");
    size_t k = 0;
    for (size_t i = 0; i < taxa.size(); ++i)
      for (size_t j = i + 1; j < taxa.size(); ++j, ++k)
        if (fields[k] != taxa[i] + "|" + taxa[j])
          line_error(lines[0].first,
                     "header pairs are not in lexicographic order");
  }

  std::vector<Ultrametric> rows;
  for (size_t r = 1; r < lines.size(); ++r) {
    auto fields = split_fields(lines[r].second);
    if (fields.size() != taxa.size() * (taxa.size() - 1) / 2)
      line_error(lines[r].first, "wrong number of distances");
    Ultrametric u;
    u.taxa = taxa;
    for (const std::string& field : fields) {
      try {
        u.d.push_back(parse_rational(field));
      } catch (const std::invalid_argument& e) {
        line_error(lines[r].first, e.what());
      }
    }
    rows.push_back(std::move(u));
  }
  if (rows.empty()) throw std::invalid_argument("no distance rows in input");
  return rows;
}

}  // namespace tropmed
