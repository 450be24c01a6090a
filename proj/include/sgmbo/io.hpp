#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sgmbo/graph.hpp"
#include "sgmbo/mbo.hpp"
#include "sgmbo/pipelines.hpp"

namespace sgmbo::io {

/// Matrix Market "coordinate real symmetric". The first comment line records
/// the node count and a provenance string. Weights round-trip exactly.
void write_matrix_market(std::ostream& out, const SignedGraph& graph, const std::string& provenance);
void write_matrix_market(const std::string& path, const SignedGraph& graph, const std::string& provenance);

/// Reads symmetric or general coordinate real/integer/pattern files. For a
/// general file the matrix must be symmetric; use read_counts for directed
/// data. Raises Parse on malformed input.
SignedGraph read_matrix_market(std::istream& in);
SignedGraph read_matrix_market(const std::string& path);

/// General (asymmetric) coordinate file as directed counts.
CountMatrix read_counts(std::istream& in);
CountMatrix read_counts(const std::string& path);

/// "node_id,label" with 1-based node ids and labels.
void write_labels_csv(std::ostream& out, const Assignment& labels);
void write_labels_csv(const std::string& path, const Assignment& labels);
/// k is inferred as the largest label.
Assignment read_labels_csv(std::istream& in);
Assignment read_labels_csv(const std::string& path);

/// One JSON object per line: {"iter","changed_rows","gl_energy","stop_ratio"}.
void write_trace_jsonl(std::ostream& out, const std::vector<TraceEntry>& trace);
void write_trace_jsonl(const std::string& path, const std::vector<TraceEntry>& trace);

/// Header "date,<id>,<id>,..."; one row per date. When `market_column` names
/// a column it is moved to panel.market instead of the instrument rows.
TimeSeriesPanel read_prices_csv(std::istream& in, const std::string& market_column = "");
TimeSeriesPanel read_prices_csv(const std::string& path, const std::string& market_column = "");

/// 8-bit RGB(A) PNG; alpha is ignored.
Image read_png(const std::string& path);
void write_png(const std::string& path, const Image& image);

/// RGBA pixels, 8-bit, for scribble masks (alpha kept).
struct RgbaImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> rgba;
};
RgbaImage read_png_rgba(const std::string& path);

}  // namespace sgmbo::io
