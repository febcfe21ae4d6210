#include "core/csv.hpp"

#include "core/error.hpp"

namespace colcur {

CsvReader::CsvReader(const std::filesystem::path& path)
    : file_(path), buf_(1 << 20) {}

int CsvReader::peek() {
  if (buf_pos_ >= buf_len_) {
    file_pos_ += buf_len_;
    buf_pos_ = 0;
    const uint64_t remaining = file_.size() - file_pos_;
    buf_len_ = static_cast<size_t>(std::min<uint64_t>(buf_.size(), remaining));
    if (buf_len_ == 0) return -1;
    file_.read_at(file_pos_, buf_.data(), buf_len_);
  }
  return static_cast<unsigned char>(buf_[buf_pos_]);
}

void CsvReader::bump() { ++buf_pos_; }

void CsvReader::malformed(const char* what) const {
  raise(Status::ParseError, "malformed CSV: ", what, " at byte ",
        file_pos_ + buf_pos_);
}

bool CsvReader::next_row() {
  if (peek() < 0) return false;
  ++record_;
  data_.clear();
  cells_.clear();

  uint32_t cell_start = 0;
  for (;;) {
    // One cell per iteration; `c` below is the first unconsumed char.
    int c = peek();
    if (c == '"') {
      bump();
      for (;;) {
        c = peek();
        if (c < 0) malformed("end of file inside quoted cell");
        bump();
        if (c != '"') {
          data_.push_back(static_cast<char>(c));
          continue;
        }
        const int after = peek();
        if (after == '"') {  // escaped quote
          bump();
          data_.push_back('"');
          continue;
        }
        if (after < 0 || after == ',' || after == '\n' || after == '\r') break;
        malformed("unexpected character after closing quote");
      }
    } else {
      while (c >= 0 && c != ',' && c != '\n' && c != '\r') {
        data_.push_back(static_cast<char>(c));
        bump();
        c = peek();
      }
    }
    cells_.emplace_back(cell_start, static_cast<uint32_t>(data_.size()) - cell_start);
    cell_start = static_cast<uint32_t>(data_.size());

    const int sep = peek();
    if (sep == ',') {
      bump();
      continue;
    }
    if (sep == '\r') {
      bump();
      if (peek() == '\n') bump();
      return true;
    }
    if (sep == '\n') {
      bump();
      return true;
    }
    if (sep < 0) return true;  // last record without trailing newline
  }
}

std::vector<std::string> CsvReader::row_strings() const {
  std::vector<std::string> out;
  out.reserve(cells_.size());
  for (size_t i = 0; i < cells_.size(); ++i) out.emplace_back(cell(i));
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {}

void CsvWriter::add_cell(std::string_view cell) {
  if (!first_in_row_) line_.push_back(',');
  first_in_row_ = false;
  const bool needs_quoting =
      cell.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quoting) {
    line_.append(cell);
  } else {
    line_.push_back('"');
    for (const char ch : cell) {
      if (ch == '"') line_.push_back('"');
      line_.push_back(ch);
    }
    line_.push_back('"');
  }
}

void CsvWriter::end_row() {
  line_.push_back('\n');
  if (line_.size() >= (1 << 20)) {
    out_.append(line_.data(), line_.size());
    line_.clear();
  }
  first_in_row_ = true;
}

void CsvWriter::close() {
  if (!line_.empty()) {
    out_.append(line_.data(), line_.size());
    line_.clear();
  }
  out_.close();
}

}  // namespace colcur
