#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace colcur {

struct ProvenanceRecord {
  std::string operation_name;
  std::string operation_version;  // semantic version
  std::string timestamp;          // ISO-8601 UTC
  std::map<std::string, std::string> parameters;

  bool operator==(const ProvenanceRecord&) const = default;
};

struct FieldMeta {
  std::string name;
  FieldKind kind;
  uint64_t row_count = 0;
  // Indexed strings only: byte length of the value blob (.dat). Lets the
  // opener verify blob integrity by stat alone.
  uint64_t data_bytes = 0;

  bool operator==(const FieldMeta&) const = default;
};

struct TableMeta {
  std::string name;
  uint64_t row_count = 0;
  std::vector<std::string> primary_keys;
  std::vector<FieldMeta> fields;

  const FieldMeta* find_field(const std::string& field_name) const;
  FieldMeta* find_field(const std::string& field_name);

  bool operator==(const TableMeta&) const = default;
};

struct DatasetMeta {
  std::string format_version;
  std::string created_at;
  std::vector<TableMeta> tables;
  std::vector<ProvenanceRecord> provenance;

  const TableMeta* find_table(const std::string& table_name) const;
  TableMeta* find_table(const std::string& table_name);

  bool operator==(const DatasetMeta&) const = default;
};

std::string meta_to_json(const DatasetMeta& meta);
DatasetMeta meta_from_json(const std::string& text);  // FormatError / VersionError

}  // namespace colcur
