#include "ckmeans/io.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "ckmeans/rng.hpp"

namespace ckmeans {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.push_back("");
  return cells;
}

std::string strip(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& cell, const std::string& path, int line_no) {
  const std::string value = strip(cell);
  if (value.empty()) {
    throw IngestionError(path + ":" + std::to_string(line_no) + ": empty cell");
  }
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size()) {
    throw IngestionError(path + ":" + std::to_string(line_no) +
                         ": non-numeric cell '" + value + "'");
  }
  return parsed;
}

int parse_int(const std::string& token, const std::string& path, int line_no) {
  const double value = parse_cell(token, path, line_no);
  const int as_int = static_cast<int>(value);
  if (static_cast<double>(as_int) != value) {
    throw IngestionError(path + ":" + std::to_string(line_no) +
                         ": expected an integer, got '" + token + "'");
  }
  return as_int;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IngestionError("cannot open '" + path + "'");
  return file;
}

}  // namespace

DataMatrix parse_points(const std::string& path) {
  std::ifstream file = open_or_throw(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto cells = split(line, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_cell(cell, path, line_no));
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw IngestionError(path + ":" + std::to_string(line_no) + ": row has " +
                           std::to_string(row.size()) + " columns, expected " +
                           std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IngestionError(path + ": no data rows");

  DataMatrix S(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t f = 0; f < width; ++f)
      S(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) = rows[i][f];
  return S;
}

ConstraintSet parse_constraints(const std::string& path, int n, int k) {
  std::ifstream file = open_or_throw(path);
  ConstraintSet cs;
  std::vector<std::optional<int>> card(static_cast<size_t>(k));
  bool any_card = false;

  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream stream(text);
    std::string directive;
    stream >> directive;
    std::string first, second, extra;
    stream >> first >> second;
    if (first.empty() || second.empty() || (stream >> extra)) {
      throw IngestionError(path + ":" + std::to_string(line_no) +
                           ": expected '" + directive + " <a> <b>'");
    }
    if (directive == "ML" || directive == "CL") {
      const int a = parse_int(first, path, line_no);
      const int b = parse_int(second, path, line_no);
      if (a < 0 || a >= n || b < 0 || b >= n) {
        throw IngestionError(path + ":" + std::to_string(line_no) +
                             ": point index outside [0," + std::to_string(n) + ")");
      }
      if (directive == "ML") {
        cs.add_must_link(a, b);
      } else {
        cs.add_cannot_link(a, b);
      }
    } else if (directive == "CARD") {
      const int j = parse_int(first, path, line_no);
      const int target = parse_int(second, path, line_no);
      if (j < 0 || j >= k) {
        throw IngestionError(path + ":" + std::to_string(line_no) +
                             ": cluster index outside [0," + std::to_string(k) + ")");
      }
      if (card[static_cast<size_t>(j)]) {
        throw IngestionError(path + ":" + std::to_string(line_no) +
                             ": duplicate CARD for cluster " + std::to_string(j));
      }
      card[static_cast<size_t>(j)] = target;
      any_card = true;
    } else {
      throw IngestionError(path + ":" + std::to_string(line_no) +
                           ": unknown directive '" + directive + "'");
    }
  }

  if (any_card) {
    std::vector<int> u(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      if (!card[static_cast<size_t>(j)]) {
        throw IngestionError(path + ": CARD lines must cover every cluster; cluster " +
                             std::to_string(j) + " is missing");
      }
      u[static_cast<size_t>(j)] = *card[static_cast<size_t>(j)];
    }
    cs.cardinalities = std::move(u);
  }

  validate_or_throw(cs, Shape{n, k, 1});
  return cs;
}

std::vector<int> parse_labels(const std::string& path) {
  std::ifstream file = open_or_throw(path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty() || text[0] == '#') continue;
    labels.push_back(parse_int(text, path, line_no));
  }
  if (labels.empty()) throw IngestionError(path + ": no labels");
  return labels;
}

BlobsResult gen_blobs(int k, int per_cluster, int d, double spread,
                      double separation, std::uint64_t seed) {
  if (k < 1 || per_cluster < 1 || d < 1) {
    throw ValidationError("gen_blobs: k, per_cluster and d must all be >= 1");
  }
  Rng rng(seed);

  // Centers go on a jittered axis-aligned line; consecutive gaps of at
  // least `separation` make every mutual distance at least `separation`.
  Mat centers = Mat::Zero(d, k);
  double offset = 0.0;
  for (int j = 0; j < k; ++j) {
    centers(0, j) = offset;
    offset += separation * (1.0 + 0.25 * rng.uniform());
  }

  BlobsResult result;
  result.points.resize(d, static_cast<Eigen::Index>(k) * per_cluster);
  result.labels.resize(static_cast<size_t>(k) * static_cast<size_t>(per_cluster));
  int col = 0;
  for (int j = 0; j < k; ++j) {
    for (int m = 0; m < per_cluster; ++m, ++col) {
      for (int f = 0; f < d; ++f)
        result.points(f, col) = centers(f, j) + spread * rng.normal();
      result.labels[static_cast<size_t>(col)] = j;
    }
  }
  return result;
}

}  // namespace ckmeans
