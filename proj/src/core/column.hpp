#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace colcur {

// Sentinel row index used by join maps and gather fills.
inline constexpr uint64_t kInvalidIndex = UINT64_MAX;

// An in-memory run of rows from one field. Fixed-width kinds live in `raw`
// (width bytes per row, little-endian as stored); indexed strings live in
// `strings`. `validity` is empty for kinds without a validity companion.
struct ColumnSlice {
  FieldKindTag tag = FieldKindTag::Numeric;
  ValueType value_type = ValueType::Int64;
  uint32_t width = 8;  // bytes per row in `raw`; 0 for indexed strings
  size_t rows = 0;
  std::vector<std::byte> raw;
  std::vector<std::string> strings;
  std::vector<uint8_t> validity;

  static ColumnSlice for_kind(const FieldKind& kind);

  size_t size() const { return rows; }
  bool has_validity() const { return !validity.empty() || validity_expected; }
  bool row_valid(size_t i) const { return validity.empty() || validity[i] != 0; }
  const std::byte* row_ptr(size_t i) const { return raw.data() + i * width; }

  // True when the kind carries a validity companion (even in an empty slice).
  bool validity_expected = false;

  void clear();
  void reserve(size_t n);
  void append_row_from(const ColumnSlice& src, size_t i);
  void append_fill_row();  // per-kind join/journal fill: zero+invalid, "", code -1

  // Gather: out[k] = src[indices[k]]; kInvalidIndex produces the fill row.
  static ColumnSlice gather(const ColumnSlice& src, std::span<const uint64_t> indices);

  // Ordering comparison (sorts, merges, spans): invalid rows order before
  // valid ones; float NaN orders after all numbers. Slices must be
  // kind-compatible (see kinds_comparable).
  static int compare_rows(const ColumnSlice& a, size_t i, const ColumnSlice& b, size_t j);

  // Exact equality for journaling: two invalid rows are equal regardless of
  // payload; valid payloads compare bitwise (no float epsilon).
  static bool rows_equal_exact(const ColumnSlice& a, size_t i, const ColumnSlice& b,
                               size_t j);
};

bool kinds_comparable(const FieldKind& a, const FieldKind& b);

}  // namespace colcur
