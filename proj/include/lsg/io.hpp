#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsg {

struct IOError : std::runtime_error {
  explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

/// 17 significant digits: enough for a lossless double round trip.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
    out_.open(path);
    if (!out_) throw IOError("cannot open for writing: " + path);
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IOError("write failed: " + path_);
  }

  void close() {
    out_.close();
    if (out_.fail()) throw IOError("close failed: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace lsg
