#include "flowclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "flowclust/error.hpp"

namespace flowclust::io {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Rows of a CSV file after its header; blank lines and '#' comments skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  CsvTable table;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> fields;
    for (auto f : split(view)) fields.emplace_back(f);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(number);
    }
  }
  if (!have_header) throw DataError(fmt::format("{}: missing header", path.string()));
  return table;
}

void expect_header(const CsvTable& t, const std::vector<std::string>& expected, const fs::path& path) {
  if (t.header != expected) {
    throw DataError(fmt::format("{}: expected header '{}'", path.string(), fmt::join(expected, ",")));
  }
}

double parse_double(std::string_view s, const fs::path& path, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError(fmt::format("{}:{}: invalid number '{}'", path.string(), line, s));
  }
  return v;
}

long long parse_int(std::string_view s, const fs::path& path, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(fmt::format("{}:{}: invalid integer '{}'", path.string(), line, s));
  }
  return v;
}

std::ofstream open_out(const fs::path& path, bool binary = false) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  return out;
}

void check_row_width(const CsvTable& t, std::size_t r, std::size_t width, const fs::path& path) {
  if (t.rows[r].size() != width) {
    throw DataError(fmt::format("{}:{}: expected {} fields, got {}", path.string(), t.line_numbers[r], width, t.rows[r].size()));
  }
}

}  // namespace

fs::path sidecar_path(const fs::path& path) { return fs::path(path.string() + ".json"); }

EmpiricalGraph read_graph_csv(const fs::path& path) {
  const CsvTable t = read_csv(path);
  expect_header(t, {"i", "j", "w"}, path);
  std::vector<Edge> edges;
  edges.reserve(t.rows.size());
  long long max_index = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    check_row_width(t, r, 3, path);
    const std::size_t line = t.line_numbers[r];
    const long long i = parse_int(t.rows[r][0], path, line);
    const long long j = parse_int(t.rows[r][1], path, line);
    const double w = parse_double(t.rows[r][2], path, line);
    if (i < 1 || j < 1 || i > std::numeric_limits<NodeId>::max() || j > std::numeric_limits<NodeId>::max()) {
      throw DataError(fmt::format("{}:{}: node indices must be >= 1", path.string(), line));
    }
    max_index = std::max({max_index, i, j});
    edges.push_back({static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1), w});
  }
  std::size_t n = static_cast<std::size_t>(max_index);
  const fs::path side = sidecar_path(path);
  if (fs::exists(side)) {
    const auto meta = read_json(side);
    if (meta.contains("n")) {
      if (!meta["n"].is_number_integer() || meta["n"].get<long long>() < max_index) {
        throw DataError(fmt::format("{}: \"n\" must be an integer >= the largest node index {}", side.string(), max_index));
      }
      n = meta["n"].get<std::size_t>();
    }
  }
  return EmpiricalGraph(n, std::move(edges));
}

void write_graph_csv(const fs::path& path, const EmpiricalGraph& g, const nlohmann::json& params) {
  auto out = open_out(path);
  out << "i,j,w\n";
  for (const auto& e : g.edges()) fmt::print(out, "{},{},{}\n", e.tail + 1, e.head + 1, e.weight);
  write_json(sidecar_path(path), {{"n", g.num_nodes()}, {"params", params}});
}

void write_signal_csv(const fs::path& path, std::string_view column, const std::vector<double>& values) {
  auto out = open_out(path);
  fmt::print(out, "i,{}\n", column);
  for (std::size_t i = 0; i < values.size(); ++i) fmt::print(out, "{},{}\n", i + 1, values[i]);
}

std::vector<double> read_signal_csv(const fs::path& path) {
  const CsvTable t = read_csv(path);
  if (t.header.size() != 2 || t.header[0] != "i") throw DataError(fmt::format("{}: expected header 'i,<name>'", path.string()));
  std::vector<double> values(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    check_row_width(t, r, 2, path);
    const long long i = parse_int(t.rows[r][0], path, t.line_numbers[r]);
    if (i != static_cast<long long>(r) + 1) throw DataError(fmt::format("{}:{}: rows must be numbered 1..n", path.string(), t.line_numbers[r]));
    values[r] = parse_double(t.rows[r][1], path, t.line_numbers[r]);
  }
  return values;
}

void write_features_csv(const fs::path& path, const Eigen::MatrixXd& features) {
  auto out = open_out(path);
  out << "i";
  for (Eigen::Index j = 0; j < features.cols(); ++j) fmt::print(out, ",f{}", j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    fmt::print(out, "{}", i + 1);
    for (Eigen::Index j = 0; j < features.cols(); ++j) fmt::print(out, ",{}", features(i, j));
    out << "\n";
  }
}

void write_table_csv(const fs::path& path, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("write_table_csv: one name per column");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("write_table_csv: columns differ in length");
  }
  auto out = open_out(path);
  fmt::print(out, "i");
  for (const auto& name : names) fmt::print(out, ",{}", name);
  out << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    fmt::print(out, "{}", i + 1);
    for (const auto& c : columns) fmt::print(out, ",{}", c[i]);
    out << "\n";
  }
}

void write_labels_csv(const fs::path& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  out << "i,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) fmt::print(out, "{},{}\n", i + 1, labels[i]);
}

std::vector<int> read_labels_csv(const fs::path& path) {
  const CsvTable t = read_csv(path);
  expect_header(t, {"i", "label"}, path);
  std::vector<int> labels(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    check_row_width(t, r, 2, path);
    const std::size_t line = t.line_numbers[r];
    if (parse_int(t.rows[r][0], path, line) != static_cast<long long>(r) + 1) {
      throw DataError(fmt::format("{}:{}: rows must be numbered 1..n", path.string(), line));
    }
    const long long l = parse_int(t.rows[r][1], path, line);
    if (l < 1 || l > std::numeric_limits<int>::max()) throw DataError(fmt::format("{}:{}: labels must be >= 1", path.string(), line));
    labels[r] = static_cast<int>(l);
  }
  return labels;
}

PointCloud read_points_csv(const fs::path& path) {
  const CsvTable t = read_csv(path);
  const bool labelled = t.header == std::vector<std::string>{"x1", "x2", "label"};
  if (!labelled && t.header != std::vector<std::string>{"x1", "x2"}) {
    throw DataError(fmt::format("{}: expected header 'x1,x2[,label]'", path.string()));
  }
  PointCloud pc;
  pc.points.resize(static_cast<Eigen::Index>(t.rows.size()), 2);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    check_row_width(t, r, labelled ? 3 : 2, path);
    const std::size_t line = t.line_numbers[r];
    pc.points(static_cast<Eigen::Index>(r), 0) = parse_double(t.rows[r][0], path, line);
    pc.points(static_cast<Eigen::Index>(r), 1) = parse_double(t.rows[r][1], path, line);
    if (labelled) pc.labels.push_back(static_cast<int>(parse_int(t.rows[r][2], path, line)));
  }
  return pc;
}

void write_points_csv(const fs::path& path, const PointCloud& pc) {
  auto out = open_out(path);
  const bool labelled = !pc.labels.empty();
  out << (labelled ? "x1,x2,label\n" : "x1,x2\n");
  for (Eigen::Index r = 0; r < pc.points.rows(); ++r) {
    fmt::print(out, "{},{}", pc.points(r, 0), pc.points(r, 1));
    if (labelled) fmt::print(out, ",{}", pc.labels[static_cast<std::size_t>(r)]);
    out << "\n";
  }
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(std::istream& in, const fs::path& path) {
  std::string tok;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(c);
  }
  if (tok.empty()) throw DataError(fmt::format("{}: truncated PNM header", path.string()));
  return tok;
}

}  // namespace

ImageGrid read_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  const std::string magic = pnm_token(in, path);
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw DataError(fmt::format("{}: only binary PGM (P5) and PPM (P6) are supported", path.string()));
  }
  auto header_int = [&](const char* what) {
    const std::string tok = pnm_token(in, path);
    const long long v = parse_int(tok, path, 1);
    if (v < 1) throw DataError(fmt::format("{}: invalid {} '{}'", path.string(), what, tok));
    return static_cast<std::size_t>(v);
  };
  const std::size_t width = header_int("width");
  const std::size_t height = header_int("height");
  const std::size_t maxval = header_int("maxval");
  if (maxval > 65535) throw DataError(fmt::format("{}: maxval {} > 65535", path.string(), maxval));

  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t samples = width * height * channels;
  std::vector<unsigned char> raw(samples * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw DataError(fmt::format("{}: truncated pixel data", path.string()));
  }
  ImageGrid img{height, width, channels, std::vector<double>(samples)};
  for (std::size_t s = 0; s < samples; ++s) {
    const unsigned v = bytes_per_sample == 1 ? raw[s] : (static_cast<unsigned>(raw[2 * s]) << 8) | raw[2 * s + 1];
    img.pixels[s] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

void write_pnm(const fs::path& path, const ImageGrid& img) {
  if (img.channels != 1 && img.channels != 3) throw DataError("write_pnm: images must have 1 or 3 channels");
  auto out = open_out(path, true);
  fmt::print(out, "{}\n{} {}\n255\n", img.channels == 1 ? "P5" : "P6", img.width, img.height);
  for (double v : img.pixels) {
    const auto byte = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    out.put(static_cast<char>(byte));
  }
}

void write_mask_pgm(const fs::path& path, const std::vector<bool>& mask, std::size_t height, std::size_t width) {
  if (mask.size() != height * width) throw DataError("write_mask_pgm: mask size mismatch");
  auto out = open_out(path, true);
  fmt::print(out, "P5\n{} {}\n255\n", width, height);
  for (bool m : mask) out.put(static_cast<char>(m ? 255 : 0));
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

std::vector<NodeId> parse_node_list(std::string_view text) {
  std::vector<NodeId> nodes;
  for (auto tok : split(text)) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < 1 ||
        v > std::numeric_limits<NodeId>::max()) {
      throw DataError(fmt::format("invalid node index '{}' in '{}'", tok, text));
    }
    nodes.push_back(static_cast<NodeId>(v - 1));
  }
  return nodes;
}

}  // namespace flowclust::io
