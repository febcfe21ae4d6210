#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace colcur {

// Import-schema document model. Parsing is strict: unknown keys and missing
// required attributes are errors so curation pipelines fail loud.

struct ForeignKeyRef {
  std::string space;  // target table name; must exist in the document
  std::string key;    // target field name (not resolved against the target)

  bool operator==(const ForeignKeyRef&) const = default;
};

struct FieldSchema {
  enum class Type { Numeric, FixedString, IndexedString, Categorical, DateTime, Date };

  Type type = Type::Numeric;
  ValueType value_type = ValueType::Int64;        // numeric / categorical
  uint32_t length = 0;                            // fixed_string
  bool optional = false;                          // numeric / datetime / date
  bool create_day_field = false;                  // datetime
  std::map<std::string, int64_t> categories;      // categorical
  bool leaky = false;                             // categorical out_of_range

  bool operator==(const FieldSchema&) const = default;
};

struct TableSchema {
  std::vector<std::string> primary_keys;
  std::vector<std::pair<std::string, ForeignKeyRef>> foreign_keys;
  std::vector<std::pair<std::string, FieldSchema>> fields;  // document order

  const FieldSchema* find_field(const std::string& name) const;

  bool operator==(const TableSchema&) const = default;
};

struct SchemaDoc {
  std::string version;
  std::vector<std::pair<std::string, TableSchema>> tables;  // document order

  const TableSchema* find_table(const std::string& name) const;

  bool operator==(const SchemaDoc&) const = default;
};

SchemaDoc parse_schema(const std::string& json_text);
SchemaDoc parse_schema_file(const std::string& path);

// Canonical serialization; parse(schema_to_json(doc)) == doc.
std::string schema_to_json(const SchemaDoc& doc);

// One CSV source column converts to one stored field plus, for leaky
// categoricals, a companion free-text field.
struct TargetField {
  std::string name;
  FieldKind kind;

  bool operator==(const TargetField&) const = default;
};

std::string freetext_companion_name(const std::string& field_name);
FieldKind field_schema_to_kind(const FieldSchema& fs);
std::vector<std::pair<std::string, std::vector<TargetField>>> schema_to_field_kinds(
    const TableSchema& ts);

}  // namespace colcur
