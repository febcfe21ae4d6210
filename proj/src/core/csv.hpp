#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/io.hpp"

namespace colcur {

// RFC 4180 reader: comma delimiter, double-quote quoting, "" escapes, quoted
// cells may contain commas and line breaks. Rows are exposed as views into a
// per-row buffer that is reused between rows.
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  // Advances to the next record; false at end of input.
  bool next_row();

  size_t cell_count() const { return cells_.size(); }
  std::string_view cell(size_t i) const {
    const auto& [off, len] = cells_[i];
    return std::string_view(data_).substr(off, len);
  }
  std::vector<std::string> row_strings() const;

  // 1-based record number of the current row (header is record 1).
  uint64_t record_number() const { return record_; }

 private:
  int peek();
  void bump();
  [[noreturn]] void malformed(const char* what) const;

  io::FileReader file_;
  std::vector<char> buf_;
  size_t buf_pos_ = 0;
  size_t buf_len_ = 0;
  uint64_t file_pos_ = 0;  // absolute offset of buf_[0]
  uint64_t record_ = 0;

  std::string data_;
  std::vector<std::pair<uint32_t, uint32_t>> cells_;
};

// RFC 4180 writer; quotes only when a cell requires it.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void add_cell(std::string_view cell);
  void end_row();
  void close();

 private:
  io::FileWriter out_;
  std::string line_;
  bool first_in_row_ = true;
};

}  // namespace colcur
