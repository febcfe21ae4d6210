#include "core/field_io.hpp"

#include <bit>
#include <cstring>

#include "core/error.hpp"
#include "core/time_util.hpp"

static_assert(std::endian::native == std::endian::little,
              "on-disk format is little-endian; big-endian hosts are unsupported");

namespace colcur {

FieldWriter::FieldWriter(Dataset& ds, const std::string& table, const std::string& name,
                         FieldKind kind, uint64_t chunk_rows)
    : ds_(&ds), table_(table), name_(name), kind_(std::move(kind)),
      chunk_rows_(chunk_rows == 0 ? kDefaultChunkRows : chunk_rows) {
  check(ds.writable(), Status::PermissionError, "dataset is read-only");
  kind_.validate();
  const auto& t = ds.table(table);
  check(!t.find_field(name), Status::NameError, "field '", name,
        "' already exists in table '", table, "'");
  check(!name.empty() && name.find('/') == std::string::npos, Status::NameError,
        "invalid field name '", name, "'");

  dat_.emplace(ds.field_file(table, name, ".dat"));
  if (kind_.tag == FieldKindTag::IndexedString) {
    idx_.emplace(ds.field_file(table, name, ".idx"));
    const uint64_t zero = 0;
    idx_->append(&zero, 8);
  }
  if (kind_.has_validity) valid_.emplace(ds.field_file(table, name, ".valid"));
  if (kind_.has_day) day_.emplace(ds.field_file(table, name, ".day"));
}

void FieldWriter::buffered_row_added() {
  ++rows_;
  ++buffered_;
  if (buffered_ > peak_buffered_) peak_buffered_ = buffered_;
  if (buffered_ >= chunk_rows_) flush();
}

void FieldWriter::append_raw(const void* row_bytes, bool valid) {
  if (kind_.tag == FieldKindTag::DateTime) {
    double ts;
    std::memcpy(&ts, row_bytes, 8);
    append_datetime(ts, valid);
    return;
  }
  check(kind_.tag != FieldKindTag::IndexedString, Status::TypeError,
        "append_raw on an indexed string field");
  const auto* p = static_cast<const std::byte*>(row_bytes);
  raw_buf_.insert(raw_buf_.end(), p, p + kind_.value_byte_width());
  if (kind_.has_validity) valid_buf_.push_back(valid ? 1 : 0);
  buffered_row_added();
}

void FieldWriter::append_int(int64_t v, bool valid) {
  const ValueType vt = kind_.value_type;
  if (is_float(vt)) {
    append_double(static_cast<double>(v), valid);
    return;
  }
  if (is_signed_int(vt)) {
    check(v >= signed_min(vt) && v <= signed_max(vt), Status::OverflowError, "value ",
          v, " does not fit ", value_type_name(vt));
  } else {
    check(v >= 0, Status::OverflowError, "value ", v, " does not fit ",
          value_type_name(vt));
    append_uint(static_cast<uint64_t>(v), valid);
    return;
  }
  append_raw(&v, valid);  // little-endian low-byte truncation
}

void FieldWriter::append_uint(uint64_t v, bool valid) {
  const ValueType vt = kind_.value_type;
  if (is_float(vt)) {
    append_double(static_cast<double>(v), valid);
    return;
  }
  if (is_signed_int(vt)) {
    check(v <= static_cast<uint64_t>(signed_max(vt)), Status::OverflowError, "value ",
          v, " does not fit ", value_type_name(vt));
    const auto s = static_cast<int64_t>(v);
    append_raw(&s, valid);
    return;
  }
  const size_t w = value_width(vt);
  check(w == 8 || v < (uint64_t{1} << (w * 8)), Status::OverflowError, "value ", v,
        " does not fit ", value_type_name(vt));
  if (vt == ValueType::Bool)
    check(v <= 1, Status::OverflowError, "boolean value must be 0 or 1, got ", v);
  append_raw(&v, valid);
}

void FieldWriter::append_double(double v, bool valid) {
  if (kind_.tag == FieldKindTag::DateTime) {
    append_datetime(v, valid);
    return;
  }
  check(is_float(kind_.value_type), Status::TypeError,
        "append_double on non-float field '", name_, "'");
  if (kind_.value_type == ValueType::Float32) {
    const float f = static_cast<float>(v);
    append_raw(&f, valid);
  } else {
    append_raw(&v, valid);
  }
}

void FieldWriter::append_string(std::string_view s) {
  if (kind_.tag == FieldKindTag::FixedString) {
    check(s.size() <= kind_.fixed_length, Status::OverflowError, "field '", name_,
          "': value of ", s.size(), " bytes exceeds fixed_string length ",
          kind_.fixed_length);
    const auto old = raw_buf_.size();
    raw_buf_.resize(old + kind_.fixed_length, std::byte{0});
    std::memcpy(raw_buf_.data() + old, s.data(), s.size());
    buffered_row_added();
    return;
  }
  check(kind_.tag == FieldKindTag::IndexedString, Status::TypeError,
        "append_string on non-string field '", name_, "'");
  blob_buf_.append(s);
  blob_offset_ += s.size();
  offsets_buf_.push_back(blob_offset_);
  buffered_row_added();
}

void FieldWriter::append_datetime(double posix, bool valid) {
  check(kind_.tag == FieldKindTag::DateTime, Status::TypeError,
        "append_datetime on non-datetime field '", name_, "'");
  raw_buf_.resize(raw_buf_.size() + 8);
  std::memcpy(raw_buf_.data() + raw_buf_.size() - 8, &posix, 8);
  if (kind_.has_validity) valid_buf_.push_back(valid ? 1 : 0);
  if (kind_.has_day) day_buf_.push_back(valid ? day_from_posix(posix) : 0);
  buffered_row_added();
}

void FieldWriter::append_null() {
  check(kind_.has_validity, Status::TypeError, "field '", name_,
        "' has no validity companion; cannot store an empty value");
  if (kind_.tag == FieldKindTag::DateTime) {
    append_datetime(0.0, false);
  } else {
    raw_buf_.resize(raw_buf_.size() + kind_.value_byte_width(), std::byte{0});
    valid_buf_.push_back(0);
    buffered_row_added();
  }
}

void FieldWriter::append_fill() {
  switch (kind_.tag) {
    case FieldKindTag::IndexedString:
      append_string("");
      return;
    case FieldKindTag::FixedString:
      append_string("");
      return;
    case FieldKindTag::Categorical:
      append_int(kLeakyCode, false);
      return;
    case FieldKindTag::DateTime:
      append_datetime(0.0, false);
      return;
    case FieldKindTag::Numeric: {
      raw_buf_.resize(raw_buf_.size() + kind_.value_byte_width(), std::byte{0});
      if (kind_.has_validity) valid_buf_.push_back(0);
      buffered_row_added();
      return;
    }
  }
}

void FieldWriter::append_row(const ColumnSlice& src, size_t i) {
  if (kind_.tag == FieldKindTag::IndexedString) {
    append_string(src.strings[i]);
    return;
  }
  append_raw(src.row_ptr(i), src.row_valid(i));
}

void FieldWriter::flush() {
  if (!raw_buf_.empty()) {
    dat_->append(raw_buf_.data(), raw_buf_.size());
    raw_buf_.clear();
  }
  if (!blob_buf_.empty()) {
    dat_->append(blob_buf_.data(), blob_buf_.size());
    blob_buf_.clear();
  }
  if (!offsets_buf_.empty()) {
    idx_->append(offsets_buf_.data(), offsets_buf_.size() * 8);
    offsets_buf_.clear();
  }
  if (!valid_buf_.empty()) {
    valid_->append(valid_buf_.data(), valid_buf_.size());
    valid_buf_.clear();
  }
  if (!day_buf_.empty()) {
    day_->append(day_buf_.data(), day_buf_.size() * 8);
    day_buf_.clear();
  }
  buffered_ = 0;
}

const FieldMeta& FieldWriter::finalize() {
  check(!finalized_, Status::StateError, "field '", name_, "' already finalized");
  finalized_ = true;
  flush();
  dat_->close();
  if (idx_) idx_->close();
  if (valid_) valid_->close();
  if (day_) day_->close();

  auto& t = ds_->mutable_table(table_);
  check(!t.find_field(name_), Status::NameError, "field '", name_,
        "' already exists in table '", table_, "'");
  if (t.fields.empty()) {
    t.row_count = rows_;
  } else {
    check(rows_ == t.row_count, Status::ShapeError, "field '", name_, "' has ", rows_,
          " rows but table '", table_, "' has ", t.row_count);
  }
  FieldMeta meta;
  meta.name = name_;
  meta.kind = kind_;
  meta.row_count = rows_;
  meta.data_bytes = kind_.tag == FieldKindTag::IndexedString
                        ? blob_offset_
                        : rows_ * kind_.value_byte_width();
  t.fields.push_back(std::move(meta));
  return t.fields.back();
}

FieldReader::FieldReader(const Dataset& ds, const std::string& table,
                         const std::string& field)
    : ds_(&ds), table_(table), meta_(&ds.field(table, field)) {}

void FieldReader::check_bounds(uint64_t start, uint64_t count) const {
  check(start + count >= start && start + count <= meta_->row_count,
        Status::BoundsError, "read of rows [", start, ", ", start + count,
        ") exceeds field '", meta_->name, "' row_count ", meta_->row_count);
}

void FieldReader::check_width(size_t type_width) const {
  check(kind().value_byte_width() == type_width, Status::TypeError, "field '",
        meta_->name, "' stores ", kind().value_byte_width(),
        "-byte values; caller requested ", type_width);
}

io::FileReader& FieldReader::dat() const {
  if (!dat_)
    dat_ = std::make_unique<io::FileReader>(ds_->field_file(table_, meta_->name, ".dat"));
  return *dat_;
}

io::FileReader& FieldReader::idx() const {
  if (!idx_)
    idx_ = std::make_unique<io::FileReader>(ds_->field_file(table_, meta_->name, ".idx"));
  return *idx_;
}

io::FileReader& FieldReader::valid() const {
  if (!valid_)
    valid_ = std::make_unique<io::FileReader>(
        ds_->field_file(table_, meta_->name, ".valid"));
  return *valid_;
}

io::FileReader& FieldReader::day_file() const {
  if (!day_)
    day_ = std::make_unique<io::FileReader>(ds_->field_file(table_, meta_->name, ".day"));
  return *day_;
}

void FieldReader::read_raw(uint64_t start, uint64_t count, std::byte* out) const {
  check_bounds(start, count);
  check(kind().tag != FieldKindTag::IndexedString, Status::TypeError,
        "read_raw on indexed string field '", meta_->name, "'");
  if (count == 0) return;
  const size_t w = kind().value_byte_width();
  dat().read_at(start * w, out, count * w);
}

void FieldReader::read_validity(uint64_t start, uint64_t count, uint8_t* out) const {
  check_bounds(start, count);
  if (count == 0) return;
  if (!kind().has_validity) {
    std::memset(out, 1, count);
    return;
  }
  valid().read_at(start, out, count);
}

void FieldReader::read_day(uint64_t start, uint64_t count, int64_t* out) const {
  check(kind().has_day, Status::TypeError, "field '", meta_->name,
        "' has no day companion");
  check_bounds(start, count);
  if (count == 0) return;
  day_file().read_at(start * 8, out, count * 8);
}

std::vector<std::string> FieldReader::read_strings(uint64_t start, uint64_t count) const {
  check_bounds(start, count);
  std::vector<std::string> out;
  out.reserve(count);
  if (kind().tag == FieldKindTag::FixedString) {
    const size_t w = kind().fixed_length;
    std::vector<char> buf(count * w);
    if (count > 0) dat().read_at(start * w, buf.data(), buf.size());
    for (uint64_t i = 0; i < count; ++i) {
      const char* p = buf.data() + i * w;
      size_t len = w;
      while (len > 0 && p[len - 1] == '\0') --len;
      out.emplace_back(p, len);
    }
    return out;
  }
  check(kind().tag == FieldKindTag::IndexedString, Status::TypeError,
        "read_strings on non-string field '", meta_->name, "'");
  if (count == 0) return out;
  std::vector<uint64_t> offsets(count + 1);
  idx().read_at(start * 8, offsets.data(), (count + 1) * 8);
  const uint64_t blob_begin = offsets.front(), blob_end = offsets.back();
  check(blob_end >= blob_begin && blob_end <= meta_->data_bytes, Status::IntegrityError,
        "field '", meta_->name, "': offsets exceed value blob");
  std::string blob(blob_end - blob_begin, '\0');
  if (!blob.empty()) dat().read_at(blob_begin, blob.data(), blob.size());
  for (uint64_t i = 0; i < count; ++i) {
    check(offsets[i] <= offsets[i + 1], Status::IntegrityError, "field '", meta_->name,
          "': offsets not non-decreasing");
    out.emplace_back(blob, offsets[i] - blob_begin, offsets[i + 1] - offsets[i]);
  }
  return out;
}

ColumnSlice FieldReader::read_slice(uint64_t start, uint64_t count) const {
  check_bounds(start, count);
  ColumnSlice s = ColumnSlice::for_kind(kind());
  s.rows = count;
  if (kind().tag == FieldKindTag::IndexedString) {
    s.strings = read_strings(start, count);
  } else {
    s.raw.resize(count * s.width);
    read_raw(start, count, s.raw.data());
  }
  if (kind().has_validity) {
    s.validity.resize(count);
    read_validity(start, count, s.validity.data());
  }
  return s;
}

FieldStream::FieldStream(const Dataset& ds, const std::string& table,
                         const std::string& field, uint64_t chunk_rows)
    : reader_(ds, table, field),
      chunk_rows_(chunk_rows == 0 ? kDefaultChunkRows : chunk_rows) {}

bool FieldStream::next() {
  if (next_start_ >= reader_.row_count()) return false;
  const uint64_t n = std::min(chunk_rows_, reader_.row_count() - next_start_);
  chunk_ = reader_.read_slice(next_start_, n);
  chunk_start_ = next_start_;
  next_start_ += n;
  return true;
}

RowCursor::RowCursor(const Dataset& ds, const std::string& table,
                     const std::string& field, uint64_t chunk_rows)
    : stream_(ds, table, field, chunk_rows) {
  if (stream_.row_count() > 0) stream_.next();
}

void RowCursor::advance() {
  check(!at_end(), Status::StateError, "cursor advanced past end");
  ++position_;
  ++offset_;
  if (offset_ >= stream_.chunk().rows && !at_end()) load_next_chunk();
}

void RowCursor::load_next_chunk() {
  boundary_row_ = ColumnSlice::for_kind(stream_.kind());
  boundary_row_.append_row_from(stream_.chunk(), stream_.chunk().rows - 1);
  has_boundary_row_ = true;
  stream_.next();
  offset_ = 0;
}

int RowCursor::order_vs_prev() const {
  if (position_ == 0) return 1;
  if (offset_ > 0)
    return ColumnSlice::compare_rows(stream_.chunk(), offset_, stream_.chunk(),
                                     offset_ - 1);
  return ColumnSlice::compare_rows(stream_.chunk(), offset_, boundary_row_, 0);
}

ColumnSlice RowCursor::copy_current_row() const {
  ColumnSlice out = ColumnSlice::for_kind(stream_.kind());
  out.append_row_from(stream_.chunk(), offset_);
  return out;
}

int RowCursor::compare_current(const RowCursor& a, const RowCursor& b) {
  return ColumnSlice::compare_rows(a.stream_.chunk(), a.offset_, b.stream_.chunk(),
                                   b.offset_);
}

bool RowCursor::current_equal_exact(const RowCursor& a, const RowCursor& b) {
  return ColumnSlice::rows_equal_exact(a.stream_.chunk(), a.offset_, b.stream_.chunk(),
                                       b.offset_);
}

const FieldMeta& write_numeric_field(Dataset& ds, const std::string& table,
                                     const std::string& name, ValueType vt,
                                     const std::vector<double>& values,
                                     const std::vector<uint8_t>* validity) {
  FieldWriter w(ds, table, name, FieldKind::numeric(vt, validity != nullptr));
  for (size_t i = 0; i < values.size(); ++i) {
    const bool valid = !validity || (*validity)[i] != 0;
    if (is_float(vt))
      w.append_double(values[i], valid);
    else
      w.append_int(static_cast<int64_t>(values[i]), valid);
  }
  const auto& meta = w.finalize();
  ds.save();
  return meta;
}

const FieldMeta& write_string_field(Dataset& ds, const std::string& table,
                                    const std::string& name, const FieldKind& kind,
                                    const std::vector<std::string>& values) {
  FieldWriter w(ds, table, name, kind);
  for (const auto& v : values) w.append_string(v);
  const auto& meta = w.finalize();
  ds.save();
  return meta;
}

}  // namespace colcur
