#include "eon/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "eon/errors.hpp"
#include "eon/simplex.hpp"

namespace eon {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string cell = line.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
    // Trim surrounding whitespace and a trailing CR from DOS line endings.
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
      cell.pop_back();
    std::size_t lead = 0;
    while (lead < cell.size() && (cell[lead] == ' ' || cell[lead] == '\t')) ++lead;
    out.push_back(cell.substr(lead));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, long line_no) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw parse_error("non-numeric cell '" + cell + "'", line_no);
  return v;
}

}  // namespace

Dataset load_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw parse_error("empty file: missing header", 1);
  ++line_no;
  const std::vector<std::string> header = split_csv_line(line);

  Index k0 = 0;
  while (k0 < static_cast<Index>(header.size()) &&
         header[static_cast<std::size_t>(k0)] == "x" + std::to_string(k0))
    ++k0;
  if (k0 == 0) throw parse_error("header must start with feature columns x0, x1, ...", 1);

  bool label_mode = false;
  Index m = 0;
  if (k0 + 1 == static_cast<Index>(header.size()) &&
      header[static_cast<std::size_t>(k0)] == "label") {
    label_mode = true;
  } else {
    // A header of only feature columns is a legal unlabeled dataset (m = 0).
    m = static_cast<Index>(header.size()) - k0;
    for (Index j = 0; j < m; ++j) {
      if (header[static_cast<std::size_t>(k0 + j)] != "pi" + std::to_string(j))
        throw parse_error("expected column 'pi" + std::to_string(j) + "', got '" +
                              header[static_cast<std::size_t>(k0 + j)] + "'",
                          1);
    }
  }

  std::vector<std::vector<double>> feature_rows;
  std::vector<long> int_labels;
  std::vector<std::vector<double>> pi_rows;
  long max_label = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw parse_error("expected " + std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()),
                        line_no);
    std::vector<double> feats(static_cast<std::size_t>(k0));
    for (Index d = 0; d < k0; ++d)
      feats[static_cast<std::size_t>(d)] = parse_cell(cells[static_cast<std::size_t>(d)], line_no);
    feature_rows.push_back(std::move(feats));

    if (label_mode) {
      const double raw = parse_cell(cells[static_cast<std::size_t>(k0)], line_no);
      const long lab = static_cast<long>(raw);
      if (raw != static_cast<double>(lab) || lab < 0)
        throw parse_error("label must be a non-negative integer", line_no);
      int_labels.push_back(lab);
      max_label = std::max(max_label, lab);
    } else if (m > 0) {
      std::vector<double> pis(static_cast<std::size_t>(m));
      double sum = 0.0;
      for (Index j = 0; j < m; ++j) {
        const double p = parse_cell(cells[static_cast<std::size_t>(k0 + j)], line_no);
        if (p < 0.0) throw parse_error("negative pi entry", line_no);
        pis[static_cast<std::size_t>(j)] = p;
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw parse_error("pi row sums to " + format_double(sum) + ", expected 1", line_no);
      pi_rows.push_back(std::move(pis));
    }
  }

  const Index T = static_cast<Index>(feature_rows.size());
  if (T == 0) throw parse_error("no data rows", line_no);

  Dataset data;
  data.X.resize(k0, T);
  for (Index t = 0; t < T; ++t)
    for (Index d = 0; d < k0; ++d)
      data.X(d, t) = feature_rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(d)];

  if (label_mode) {
    const Index classes = static_cast<Index>(max_label + 1);
    data.pi = Matrix::Zero(classes, T);
    for (Index t = 0; t < T; ++t)
      data.pi(int_labels[static_cast<std::size_t>(t)], t) = 1.0;
  } else {
    data.pi.resize(m, T);
    for (Index t = 0; t < T; ++t)
      for (Index j = 0; j < m; ++j)
        data.pi(j, t) = pi_rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
  }
  return data;
}

Dataset load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open '" + path + "' for reading");
  return load_csv(f);
}

void save_csv(const Dataset& data, std::ostream& out) {
  const Index K0 = data.feature_dim();
  const Index M = data.label_dim();
  const Index T = data.size();

  bool one_hot = true;
  for (Index t = 0; t < T && one_hot; ++t) {
    int ones = 0;
    for (Index j = 0; j < M; ++j) {
      const double p = data.pi(j, t);
      if (p == 1.0)
        ++ones;
      else if (p != 0.0)
        one_hot = false;
    }
    if (ones != 1) one_hot = false;
  }

  for (Index d = 0; d < K0; ++d) out << (d ? "," : "") << "x" << d;
  if (one_hot) {
    out << ",label\n";
  } else {
    for (Index j = 0; j < M; ++j) out << ",pi" << j;
    out << "\n";
  }

  for (Index t = 0; t < T; ++t) {
    for (Index d = 0; d < K0; ++d) {
      if (d) out << ",";
      out << format_double(data.X(d, t));
    }
    if (one_hot) {
      Index lab = 0;
      for (Index j = 0; j < M; ++j)
        if (data.pi(j, t) == 1.0) lab = j;
      out << "," << lab;
    } else {
      for (Index j = 0; j < M; ++j) out << "," << format_double(data.pi(j, t));
    }
    out << "\n";
  }
  if (!out) throw io_error("dataset write failed");
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  save_csv(data, f);
  f.flush();
  if (!f) throw io_error("write to '" + path + "' failed");
}

}  // namespace eon
