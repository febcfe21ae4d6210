#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace colcur {

enum class ValueType : uint8_t {
  Int8,
  Int16,
  Int32,
  Int64,
  UInt8,
  UInt16,
  UInt32,
  UInt64,
  Float32,
  Float64,
  Bool,
};

size_t value_width(ValueType vt);
bool is_signed_int(ValueType vt);
bool is_unsigned_int(ValueType vt);
bool is_float(ValueType vt);
std::string_view value_type_name(ValueType vt);
ValueType value_type_from_name(std::string_view name);  // throws SchemaError

enum class FieldKindTag : uint8_t {
  FixedString,
  IndexedString,
  Numeric,
  Categorical,
  DateTime,
};

std::string_view field_kind_tag_name(FieldKindTag tag);
FieldKindTag field_kind_tag_from_name(std::string_view name);  // throws FormatError

// Reserved categorical code for out-of-key ("leaky") entries.
inline constexpr int64_t kLeakyCode = -1;

// Tagged description of a column's type. Only the members relevant to `tag`
// are meaningful; validate() enforces the cross-member invariants.
struct FieldKind {
  FieldKindTag tag = FieldKindTag::Numeric;
  uint32_t fixed_length = 0;                  // FixedString
  ValueType value_type = ValueType::Int64;    // Numeric / Categorical
  bool has_validity = false;                  // Numeric / DateTime
  bool has_day = false;                       // DateTime
  bool leaky = false;                         // Categorical
  std::map<std::string, int64_t> category_key;  // Categorical

  static FieldKind fixed_string(uint32_t length);
  static FieldKind indexed_string();
  static FieldKind numeric(ValueType vt, bool validity = false);
  static FieldKind categorical(ValueType vt, std::map<std::string, int64_t> key,
                               bool leaky = false);
  static FieldKind datetime(bool day = false, bool validity = false);

  // Bytes per row in the .dat file. Indexed strings have no fixed width.
  size_t value_byte_width() const;
  bool is_string() const {
    return tag == FieldKindTag::FixedString || tag == FieldKindTag::IndexedString;
  }

  void validate() const;  // throws SchemaError on broken invariants

  bool operator==(const FieldKind&) const = default;
};

// Smallest/largest code representable by a categorical value_type.
int64_t signed_min(ValueType vt);
int64_t signed_max(ValueType vt);

}  // namespace colcur
