#include "core/types.hpp"

#include <array>
#include <set>

#include "core/error.hpp"

namespace colcur {

namespace {
struct ValueTypeInfo {
  ValueType vt;
  std::string_view name;
  size_t width;
};

constexpr std::array<ValueTypeInfo, 11> kValueTypes{{
    {ValueType::Int8, "int8", 1},
    {ValueType::Int16, "int16", 2},
    {ValueType::Int32, "int32", 4},
    {ValueType::Int64, "int64", 8},
    {ValueType::UInt8, "uint8", 1},
    {ValueType::UInt16, "uint16", 2},
    {ValueType::UInt32, "uint32", 4},
    {ValueType::UInt64, "uint64", 8},
    {ValueType::Float32, "float32", 4},
    {ValueType::Float64, "float64", 8},
    {ValueType::Bool, "bool", 1},
}};
}  // namespace

size_t value_width(ValueType vt) {
  return kValueTypes[static_cast<size_t>(vt)].width;
}

bool is_signed_int(ValueType vt) {
  switch (vt) {
    case ValueType::Int8:
    case ValueType::Int16:
    case ValueType::Int32:
    case ValueType::Int64:
      return true;
    default:
      return false;
  }
}

bool is_unsigned_int(ValueType vt) {
  switch (vt) {
    case ValueType::UInt8:
    case ValueType::UInt16:
    case ValueType::UInt32:
    case ValueType::UInt64:
    case ValueType::Bool:
      return true;
    default:
      return false;
  }
}

bool is_float(ValueType vt) {
  return vt == ValueType::Float32 || vt == ValueType::Float64;
}

std::string_view value_type_name(ValueType vt) {
  return kValueTypes[static_cast<size_t>(vt)].name;
}

ValueType value_type_from_name(std::string_view name) {
  for (const auto& info : kValueTypes) {
    if (info.name == name) return info.vt;
  }
  raise(Status::SchemaError, "unknown value_type '", std::string(name), "'");
}

std::string_view field_kind_tag_name(FieldKindTag tag) {
  switch (tag) {
    case FieldKindTag::FixedString:
      return "fixed_string";
    case FieldKindTag::IndexedString:
      return "indexed_string";
    case FieldKindTag::Numeric:
      return "numeric";
    case FieldKindTag::Categorical:
      return "categorical";
    case FieldKindTag::DateTime:
      return "datetime";
  }
  return "unknown";
}

FieldKindTag field_kind_tag_from_name(std::string_view name) {
  if (name == "fixed_string") return FieldKindTag::FixedString;
  if (name == "indexed_string") return FieldKindTag::IndexedString;
  if (name == "numeric") return FieldKindTag::Numeric;
  if (name == "categorical") return FieldKindTag::Categorical;
  if (name == "datetime") return FieldKindTag::DateTime;
  raise(Status::FormatError, "unknown field kind '", std::string(name), "'");
}

FieldKind FieldKind::fixed_string(uint32_t length) {
  FieldKind k;
  k.tag = FieldKindTag::FixedString;
  k.fixed_length = length;
  k.validate();
  return k;
}

FieldKind FieldKind::indexed_string() {
  FieldKind k;
  k.tag = FieldKindTag::IndexedString;
  return k;
}

FieldKind FieldKind::numeric(ValueType vt, bool validity) {
  FieldKind k;
  k.tag = FieldKindTag::Numeric;
  k.value_type = vt;
  k.has_validity = validity;
  return k;
}

FieldKind FieldKind::categorical(ValueType vt, std::map<std::string, int64_t> key,
                                 bool leaky) {
  FieldKind k;
  k.tag = FieldKindTag::Categorical;
  k.value_type = vt;
  k.category_key = std::move(key);
  k.leaky = leaky;
  k.validate();
  return k;
}

FieldKind FieldKind::datetime(bool day, bool validity) {
  FieldKind k;
  k.tag = FieldKindTag::DateTime;
  k.value_type = ValueType::Float64;
  k.has_day = day;
  k.has_validity = validity;
  return k;
}

size_t FieldKind::value_byte_width() const {
  switch (tag) {
    case FieldKindTag::FixedString:
      return fixed_length;
    case FieldKindTag::IndexedString:
      return 0;
    case FieldKindTag::Numeric:
    case FieldKindTag::Categorical:
      return value_width(value_type);
    case FieldKindTag::DateTime:
      return 8;
  }
  return 0;
}

void FieldKind::validate() const {
  switch (tag) {
    case FieldKindTag::FixedString:
      check(fixed_length >= 1, Status::SchemaError,
            "fixed_string length must be >= 1");
      break;
    case FieldKindTag::Categorical: {
      check(is_signed_int(value_type), Status::SchemaError,
            "categorical value_type must be a signed integer, got '",
            value_type_name(value_type), "'");
      std::set<int64_t> codes;
      for (const auto& [name, code] : category_key) {
        check(code >= signed_min(value_type) && code <= signed_max(value_type),
              Status::SchemaError, "category code ", code, " for '", name,
              "' does not fit ", value_type_name(value_type));
        check(codes.insert(code).second, Status::KeyError,
              "duplicate category code ", code, " (key must be injective)");
        if (leaky)
          check(code != kLeakyCode, Status::KeyError,
                "leaky categorical reserves code ", kLeakyCode,
                "; it cannot appear in the key");
      }
      break;
    }
    default:
      break;
  }
}

int64_t signed_min(ValueType vt) {
  switch (vt) {
    case ValueType::Int8:
      return INT8_MIN;
    case ValueType::Int16:
      return INT16_MIN;
    case ValueType::Int32:
      return INT32_MIN;
    default:
      return INT64_MIN;
  }
}

int64_t signed_max(ValueType vt) {
  switch (vt) {
    case ValueType::Int8:
      return INT8_MAX;
    case ValueType::Int16:
      return INT16_MAX;
    case ValueType::Int32:
      return INT32_MAX;
    default:
      return INT64_MAX;
  }
}

}  // namespace colcur
