#include "sgmbo/io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sgmbo/error.hpp"

namespace sgmbo::io {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "cannot parse " + what + " '" + s + "'");
  }
}

struct MmHeader {
  bool symmetric = false;
  bool pattern = false;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
};

struct MmEntry {
  std::size_t i;
  std::size_t j;
  double w;
};

std::vector<MmEntry> read_coordinate(std::istream& in, MmHeader& h) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty Matrix Market stream");
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw Error(ErrorCode::Parse, "expected a '%%MatrixMarket matrix coordinate' banner");
  }
  if (field != "real" && field != "integer" && field != "pattern" && field != "double") {
    throw Error(ErrorCode::Parse, "unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw Error(ErrorCode::Parse, "unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  h.symmetric = symmetry == "symmetric";
  h.pattern = field == "pattern";

  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    std::istringstream size_line(t);
    if (!(size_line >> h.rows >> h.cols >> h.nnz)) throw Error(ErrorCode::Parse, "bad Matrix Market size line");
    break;
  }
  if (h.rows != h.cols) throw Error(ErrorCode::Parse, "adjacency matrix must be square");

  std::vector<MmEntry> entries;
  entries.reserve(h.nnz);
  while (entries.size() < h.nnz && std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    std::istringstream es(t);
    std::size_t i = 0;
    std::size_t j = 0;
    double w = 1.0;
    if (!(es >> i >> j) || (!h.pattern && !(es >> w))) throw Error(ErrorCode::Parse, "bad entry line '" + t + "'");
    if (i < 1 || j < 1 || i > h.rows || j > h.cols) throw Error(ErrorCode::Parse, "entry index out of range");
    entries.push_back({i - 1, j - 1, w});
  }
  if (entries.size() != h.nnz) throw Error(ErrorCode::Parse, "fewer entries than declared");
  return entries;
}

}  // namespace

void write_matrix_market(std::ostream& out, const SignedGraph& graph, const std::string& provenance) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << "% nodes=" << graph.node_count() << " source=" << provenance << '\n';
  out << graph.node_count() << ' ' << graph.node_count() << ' ' << graph.edge_count() << '\n';
  char buf[64];
  for (const Edge& e : graph.edges()) {
    // Lower triangle, 1-based.
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << e.j + 1 << ' ' << e.i + 1 << ' ' << buf << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing Matrix Market data");
}

void write_matrix_market(const std::string& path, const SignedGraph& graph, const std::string& provenance) {
  auto out = open_out(path);
  write_matrix_market(out, graph, provenance);
}

SignedGraph read_matrix_market(std::istream& in) {
  MmHeader h;
  const std::vector<MmEntry> entries = read_coordinate(in, h);
  std::vector<Edge> edges;
  edges.reserve(entries.size());
  if (h.symmetric) {
    for (const MmEntry& e : entries) {
      if (e.i == e.j) {
        if (e.w != 0.0) throw Error(ErrorCode::Parse, "self-loop in adjacency at node " + std::to_string(e.i + 1));
        continue;
      }
      edges.push_back({e.i, e.j, e.w});
    }
    return SignedGraph::from_triplets(h.rows, edges);
  }

  std::map<std::pair<std::size_t, std::size_t>, double> upper;
  std::map<std::pair<std::size_t, std::size_t>, double> lower_part;
  for (const MmEntry& e : entries) {
    if (e.i == e.j) {
      if (e.w != 0.0) throw Error(ErrorCode::Parse, "self-loop in adjacency at node " + std::to_string(e.i + 1));
      continue;
    }
    auto& side = e.i < e.j ? upper : lower_part;
    side[{std::min(e.i, e.j), std::max(e.i, e.j)}] += e.w;
  }
  if (upper != lower_part) throw Error(ErrorCode::Parse, "general-format adjacency is not symmetric");
  for (const auto& [key, w] : upper) edges.push_back({key.first, key.second, w});
  return SignedGraph::from_triplets(h.rows, edges);
}

SignedGraph read_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

CountMatrix read_counts(std::istream& in) {
  MmHeader h;
  const std::vector<MmEntry> entries = read_coordinate(in, h);
  CountMatrix m;
  m.node_count = h.rows;
  for (const MmEntry& e : entries) {
    m.entries.push_back({e.i, e.j, e.w});
    if (h.symmetric && e.i != e.j) m.entries.push_back({e.j, e.i, e.w});
  }
  return m;
}

CountMatrix read_counts(const std::string& path) {
  auto in = open_in(path);
  return read_counts(in);
}

void write_labels_csv(std::ostream& out, const Assignment& labels) {
  out << "node_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i + 1 << ',' << labels.labels[i] << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing labels");
}

void write_labels_csv(const std::string& path, const Assignment& labels) {
  auto out = open_out(path);
  write_labels_csv(out, labels);
}

Assignment read_labels_csv(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::size_t, std::uint32_t>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_csv(t);
    if (fields.size() != 2) throw Error(ErrorCode::Parse, "labels CSV rows need two fields");
    if (first) {
      first = false;
      if (lower(fields[0]) == "node_id") continue;
    }
    const double id = parse_double(fields[0], "node id");
    const double label = parse_double(fields[1], "label");
    if (id < 1 || label < 1 || id != std::floor(id) || label != std::floor(label)) {
      throw Error(ErrorCode::Parse, "node ids and labels must be positive integers");
    }
    rows.emplace_back(static_cast<std::size_t>(id) - 1, static_cast<std::uint32_t>(label));
  }
  Assignment a;
  a.labels.assign(rows.size(), 0);
  for (const auto& [id, label] : rows) {
    if (id >= rows.size() || a.labels[id] != 0) throw Error(ErrorCode::Parse, "node ids must be 1..V without repeats");
    a.labels[id] = label;
    a.k = std::max<std::size_t>(a.k, label);
  }
  return a;
}

Assignment read_labels_csv(const std::string& path) {
  auto in = open_in(path);
  return read_labels_csv(in);
}

void write_trace_jsonl(std::ostream& out, const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& t : trace) {
    nlohmann::ordered_json j;
    j["iter"] = t.iter;
    j["changed_rows"] = t.changed_rows;
    j["gl_energy"] = t.gl_energy;
    j["stop_ratio"] = t.stop_ratio;
    out << j.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing trace");
}

void write_trace_jsonl(const std::string& path, const std::vector<TraceEntry>& trace) {
  auto out = open_out(path);
  write_trace_jsonl(out, trace);
}

TimeSeriesPanel read_prices_csv(std::istream& in, const std::string& market_column) {
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (!trim(line).empty()) header = split_csv(trim(line));
  }
  if (header.size() < 2) throw Error(ErrorCode::Parse, "prices CSV needs a date column and at least one instrument");

  std::size_t market_idx = 0;  // 0 means none (column 0 is the date)
  TimeSeriesPanel panel;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (!market_column.empty() && header[c] == market_column) {
      market_idx = c;
    } else {
      panel.instruments.push_back(header[c]);
    }
  }
  if (!market_column.empty() && market_idx == 0) {
    throw Error(ErrorCode::Parse, "market column '" + market_column + "' not found");
  }

  std::vector<std::vector<double>> columns(header.size());
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_csv(t);
    if (fields.size() != header.size()) throw Error(ErrorCode::Parse, "ragged prices CSV row for " + fields[0]);
    panel.dates.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) columns[c].push_back(parse_double(fields[c], "price"));
  }
  const auto t_len = static_cast<Eigen::Index>(panel.dates.size());
  panel.prices.resize(static_cast<Eigen::Index>(panel.instruments.size()), t_len);
  Eigen::Index row = 0;
  for (std::size_t c = 1; c < header.size(); ++c) {
    Eigen::Map<const Eigen::VectorXd> col(columns[c].data(), t_len);
    if (c == market_idx) {
      panel.market = col;
    } else {
      panel.prices.row(row++) = col.transpose();
    }
  }
  return panel;
}

TimeSeriesPanel read_prices_csv(const std::string& path, const std::string& market_column) {
  auto in = open_in(path);
  return read_prices_csv(in, market_column);
}

RgbaImage read_png_rgba(const std::string& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw Error(ErrorCode::Io, "cannot read PNG " + path + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGBA;
  RgbaImage out;
  out.height = img.height;
  out.width = img.width;
  out.rgba.resize(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, out.rgba.data(), 0, nullptr)) {
    png_image_free(&img);
    throw Error(ErrorCode::Io, "cannot decode PNG " + path + ": " + img.message);
  }
  return out;
}

Image read_png(const std::string& path) {
  const RgbaImage raw = read_png_rgba(path);
  Image image;
  image.height = raw.height;
  image.width = raw.width;
  image.rgb.resize(raw.height * raw.width * 3);
  for (std::size_t p = 0; p < raw.height * raw.width; ++p) {
    for (std::size_t c = 0; c < 3; ++c) image.rgb[3 * p + c] = raw.rgba[4 * p + c] / 255.0;
  }
  return image;
}

void write_png(const std::string& path, const Image& image) {
  if (image.rgb.size() != image.pixel_count() * 3) throw Error(ErrorCode::DimensionMismatch, "image buffer size mismatch");
  std::vector<std::uint8_t> bytes(image.rgb.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(std::lround(std::clamp(image.rgb[i], 0.0, 1.0) * 255.0));
  }
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width);
  img.height = static_cast<png_uint_32>(image.height);
  img.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, "cannot write PNG " + path + ": " + img.message);
  }
}

}  // namespace sgmbo::io
