#include "core/column.hpp"

#include <cmath>
#include <cstring>

#include "core/error.hpp"

namespace colcur {

namespace {

template <typename T>
T load_as(const std::byte* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <typename T>
int cmp3(T a, T b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_float(double a, double b) {
  const bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb) return na == nb ? 0 : (na ? 1 : -1);  // NaN after all numbers
  return cmp3(a, b);
}

int compare_typed(ValueType vt, const std::byte* pa, const std::byte* pb) {
  switch (vt) {
    case ValueType::Int8:
      return cmp3(load_as<int8_t>(pa), load_as<int8_t>(pb));
    case ValueType::Int16:
      return cmp3(load_as<int16_t>(pa), load_as<int16_t>(pb));
    case ValueType::Int32:
      return cmp3(load_as<int32_t>(pa), load_as<int32_t>(pb));
    case ValueType::Int64:
      return cmp3(load_as<int64_t>(pa), load_as<int64_t>(pb));
    case ValueType::UInt8:
    case ValueType::Bool:
      return cmp3(load_as<uint8_t>(pa), load_as<uint8_t>(pb));
    case ValueType::UInt16:
      return cmp3(load_as<uint16_t>(pa), load_as<uint16_t>(pb));
    case ValueType::UInt32:
      return cmp3(load_as<uint32_t>(pa), load_as<uint32_t>(pb));
    case ValueType::UInt64:
      return cmp3(load_as<uint64_t>(pa), load_as<uint64_t>(pb));
    case ValueType::Float32:
      return compare_float(load_as<float>(pa), load_as<float>(pb));
    case ValueType::Float64:
      return compare_float(load_as<double>(pa), load_as<double>(pb));
  }
  return 0;
}

}  // namespace

ColumnSlice ColumnSlice::for_kind(const FieldKind& kind) {
  ColumnSlice s;
  s.tag = kind.tag;
  s.value_type = kind.tag == FieldKindTag::DateTime ? ValueType::Float64
                                                    : kind.value_type;
  s.width = static_cast<uint32_t>(kind.value_byte_width());
  s.validity_expected = kind.has_validity;
  return s;
}

void ColumnSlice::clear() {
  rows = 0;
  raw.clear();
  strings.clear();
  validity.clear();
}

void ColumnSlice::reserve(size_t n) {
  if (tag == FieldKindTag::IndexedString)
    strings.reserve(n);
  else
    raw.reserve(n * width);
  if (validity_expected) validity.reserve(n);
}

void ColumnSlice::append_row_from(const ColumnSlice& src, size_t i) {
  if (tag == FieldKindTag::IndexedString) {
    strings.push_back(src.strings[i]);
  } else {
    const auto* p = src.row_ptr(i);
    raw.insert(raw.end(), p, p + width);
  }
  if (validity_expected) validity.push_back(src.row_valid(i) ? 1 : 0);
  ++rows;
}

void ColumnSlice::append_fill_row() {
  if (tag == FieldKindTag::IndexedString) {
    strings.emplace_back();
  } else if (tag == FieldKindTag::Categorical) {
    int64_t code = kLeakyCode;
    const auto old = raw.size();
    raw.resize(old + width);
    std::memcpy(raw.data() + old, &code, width);  // little-endian truncation
  } else {
    raw.resize(raw.size() + width, std::byte{0});
  }
  if (validity_expected) validity.push_back(0);
  ++rows;
}

ColumnSlice ColumnSlice::gather(const ColumnSlice& src, std::span<const uint64_t> indices) {
  ColumnSlice out;
  out.tag = src.tag;
  out.value_type = src.value_type;
  out.width = src.width;
  out.validity_expected = src.validity_expected || !src.validity.empty();
  out.reserve(indices.size());
  for (const uint64_t idx : indices) {
    if (idx == kInvalidIndex) {
      out.append_fill_row();
    } else {
      check(idx < src.rows, Status::BoundsError, "gather index ", idx,
            " out of range (", src.rows, " rows)");
      out.append_row_from(src, idx);
    }
  }
  return out;
}

int ColumnSlice::compare_rows(const ColumnSlice& a, size_t i, const ColumnSlice& b,
                              size_t j) {
  const bool va = a.row_valid(i), vb = b.row_valid(j);
  if (!va || !vb) {
    if (va == vb) return 0;  // both invalid: equal for ordering purposes
    return va ? 1 : -1;      // invalid sorts first
  }
  switch (a.tag) {
    case FieldKindTag::IndexedString: {
      const int c = a.strings[i].compare(b.strings[j]);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case FieldKindTag::FixedString: {
      const int c = std::memcmp(a.row_ptr(i), b.row_ptr(j), a.width);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    default:
      return compare_typed(a.value_type, a.row_ptr(i), b.row_ptr(j));
  }
}

bool ColumnSlice::rows_equal_exact(const ColumnSlice& a, size_t i, const ColumnSlice& b,
                                   size_t j) {
  const bool va = a.row_valid(i), vb = b.row_valid(j);
  if (va != vb) return false;
  if (!va) return true;  // both invalid: payload ignored
  if (a.tag == FieldKindTag::IndexedString) return a.strings[i] == b.strings[j];
  return std::memcmp(a.row_ptr(i), b.row_ptr(j), a.width) == 0;
}

bool kinds_comparable(const FieldKind& a, const FieldKind& b) {
  if (a.tag != b.tag) return false;
  switch (a.tag) {
    case FieldKindTag::FixedString:
      return a.fixed_length == b.fixed_length;
    case FieldKindTag::Numeric:
    case FieldKindTag::Categorical:
      return a.value_type == b.value_type;
    default:
      return true;
  }
}

}  // namespace colcur
