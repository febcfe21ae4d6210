#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/column.hpp"
#include "core/dataset.hpp"
#include "core/io.hpp"

namespace colcur {

inline constexpr uint64_t kDefaultChunkRows = 1 << 16;

// Streams one field to disk in the bit-exact on-disk layout, buffering at
// most chunk_rows rows. finalize() registers the field in the table's
// metadata (the caller decides when to save the dataset).
class FieldWriter {
 public:
  FieldWriter(Dataset& ds, const std::string& table, const std::string& name,
              FieldKind kind, uint64_t chunk_rows = kDefaultChunkRows);

  const FieldKind& kind() const { return kind_; }
  uint64_t rows_appended() const { return rows_; }
  uint64_t peak_buffered_rows() const { return peak_buffered_; }

  void append_raw(const void* row_bytes, bool valid = true);
  template <typename T>
  void append_value(T v, bool valid = true) {
    static_assert(std::is_trivially_copyable_v<T>);
    append_raw(&v, valid);
  }
  void append_int(int64_t v, bool valid = true);    // narrows to value_type
  void append_uint(uint64_t v, bool valid = true);  // narrows to value_type
  void append_double(double v, bool valid = true);
  void append_string(std::string_view s);           // fixed (pads) or indexed
  void append_datetime(double posix, bool valid = true);  // derives .day
  void append_null();  // kind-appropriate zero payload, validity 0
  void append_fill();  // join/journal fill row (categorical -1, etc.)
  void append_row(const ColumnSlice& src, size_t i);

  // Flushes, closes files, registers the FieldMeta. Must be called exactly
  // once; a writer dropped without finalize leaves no metadata behind.
  const FieldMeta& finalize();

 private:
  void flush();
  void buffered_row_added();

  Dataset* ds_;
  std::string table_;
  std::string name_;
  FieldKind kind_;
  uint64_t chunk_rows_;
  uint64_t rows_ = 0;
  uint64_t buffered_ = 0;
  uint64_t peak_buffered_ = 0;
  uint64_t blob_offset_ = 0;
  bool finalized_ = false;

  std::vector<std::byte> raw_buf_;
  std::string blob_buf_;
  std::vector<uint64_t> offsets_buf_;
  std::vector<uint8_t> valid_buf_;
  std::vector<int64_t> day_buf_;

  std::optional<io::FileWriter> dat_;
  std::optional<io::FileWriter> idx_;
  std::optional<io::FileWriter> valid_;
  std::optional<io::FileWriter> day_;
};

// Convenience one-shot writers used by tests and small fixtures.
const FieldMeta& write_numeric_field(Dataset& ds, const std::string& table,
                                     const std::string& name, ValueType vt,
                                     const std::vector<double>& values,
                                     const std::vector<uint8_t>* validity = nullptr);
const FieldMeta& write_string_field(Dataset& ds, const std::string& table,
                                    const std::string& name, const FieldKind& kind,
                                    const std::vector<std::string>& values);

// Random-access reads over one stored field. Files open lazily on first use;
// constructing a reader performs no I/O on column data.
class FieldReader {
 public:
  FieldReader(const Dataset& ds, const std::string& table, const std::string& field);

  const FieldMeta& meta() const { return *meta_; }
  const FieldKind& kind() const { return meta_->kind; }
  uint64_t row_count() const { return meta_->row_count; }

  // Fixed-width payloads, exactly as stored.
  void read_raw(uint64_t start, uint64_t count, std::byte* out) const;
  template <typename T>
  void read_values(uint64_t start, uint64_t count, T* out) const {
    check_width(sizeof(T));
    read_raw(start, count, reinterpret_cast<std::byte*>(out));
  }
  // Validity bytes; fills 1s when the kind has no validity companion.
  void read_validity(uint64_t start, uint64_t count, uint8_t* out) const;
  void read_day(uint64_t start, uint64_t count, int64_t* out) const;
  // Decoded strings: fixed strings have trailing padding stripped.
  std::vector<std::string> read_strings(uint64_t start, uint64_t count) const;

  ColumnSlice read_slice(uint64_t start, uint64_t count) const;
  ColumnSlice read_all() const { return read_slice(0, row_count()); }

 private:
  void check_bounds(uint64_t start, uint64_t count) const;
  void check_width(size_t type_width) const;
  io::FileReader& dat() const;
  io::FileReader& idx() const;
  io::FileReader& valid() const;
  io::FileReader& day_file() const;

  const Dataset* ds_;
  std::string table_;
  const FieldMeta* meta_;
  mutable std::unique_ptr<io::FileReader> dat_;
  mutable std::unique_ptr<io::FileReader> idx_;
  mutable std::unique_ptr<io::FileReader> valid_;
  mutable std::unique_ptr<io::FileReader> day_;
};

// Forward-only chunked scan: visits every row exactly once in storage order,
// buffering at most chunk_rows rows at a time.
class FieldStream {
 public:
  FieldStream(const Dataset& ds, const std::string& table, const std::string& field,
              uint64_t chunk_rows = kDefaultChunkRows);

  bool next();  // loads the next chunk; false when exhausted
  const ColumnSlice& chunk() const { return chunk_; }
  uint64_t chunk_start() const { return chunk_start_; }
  uint64_t row_count() const { return reader_.row_count(); }
  const FieldKind& kind() const { return reader_.kind(); }

 private:
  FieldReader reader_;
  uint64_t chunk_rows_;
  uint64_t next_start_ = 0;
  uint64_t chunk_start_ = 0;
  ColumnSlice chunk_;
};

// Row-at-a-time view over a FieldStream for streaming merges. Tracks enough
// state to verify sortedness across chunk boundaries in O(1) memory.
class RowCursor {
 public:
  RowCursor(const Dataset& ds, const std::string& table, const std::string& field,
            uint64_t chunk_rows = kDefaultChunkRows);

  bool at_end() const { return position_ >= stream_.row_count(); }
  uint64_t position() const { return position_; }
  uint64_t row_count() const { return stream_.row_count(); }
  const FieldKind& kind() const { return stream_.kind(); }
  const ColumnSlice& chunk() const { return stream_.chunk(); }
  size_t offset_in_chunk() const { return offset_; }

  void advance();

  // Ordering of the current row against the previous row; +1 at row 0.
  int order_vs_prev() const;

  ColumnSlice copy_current_row() const;

  static int compare_current(const RowCursor& a, const RowCursor& b);
  static bool current_equal_exact(const RowCursor& a, const RowCursor& b);

 private:
  void load_next_chunk();

  FieldStream stream_;
  uint64_t position_ = 0;
  size_t offset_ = 0;
  ColumnSlice boundary_row_;  // last row of the previous chunk
  bool has_boundary_row_ = false;
};

}  // namespace colcur
