#include "core/metadata.hpp"

#include <charconv>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/version.hpp"

namespace colcur {

using ordered_json = nlohmann::ordered_json;

const FieldMeta* TableMeta::find_field(const std::string& field_name) const {
  for (const auto& f : fields)
    if (f.name == field_name) return &f;
  return nullptr;
}

FieldMeta* TableMeta::find_field(const std::string& field_name) {
  for (auto& f : fields)
    if (f.name == field_name) return &f;
  return nullptr;
}

const TableMeta* DatasetMeta::find_table(const std::string& table_name) const {
  for (const auto& t : tables)
    if (t.name == table_name) return &t;
  return nullptr;
}

TableMeta* DatasetMeta::find_table(const std::string& table_name) {
  for (auto& t : tables)
    if (t.name == table_name) return &t;
  return nullptr;
}

namespace {

ordered_json field_to_json(const FieldMeta& f) {
  ordered_json j;
  j["name"] = f.name;
  j["kind"] = std::string(field_kind_tag_name(f.kind.tag));
  j["row_count"] = f.row_count;
  switch (f.kind.tag) {
    case FieldKindTag::FixedString:
      j["length"] = f.kind.fixed_length;
      break;
    case FieldKindTag::IndexedString:
      j["data_bytes"] = f.data_bytes;
      break;
    case FieldKindTag::Numeric:
      j["value_type"] = std::string(value_type_name(f.kind.value_type));
      j["has_validity"] = f.kind.has_validity;
      break;
    case FieldKindTag::Categorical: {
      j["value_type"] = std::string(value_type_name(f.kind.value_type));
      j["leaky"] = f.kind.leaky;
      ordered_json key = ordered_json::object();
      for (const auto& [name, code] : f.kind.category_key) key[name] = code;
      j["key"] = std::move(key);
      break;
    }
    case FieldKindTag::DateTime:
      j["has_validity"] = f.kind.has_validity;
      j["has_day"] = f.kind.has_day;
      break;
  }
  return j;
}

FieldMeta field_from_json(const ordered_json& j) {
  FieldMeta f;
  check(j.is_object() && j.contains("name") && j.contains("kind") &&
            j.contains("row_count"),
        Status::FormatError, "field entry missing name/kind/row_count");
  f.name = j.at("name").get<std::string>();
  f.row_count = j.at("row_count").get<uint64_t>();
  const auto tag = field_kind_tag_from_name(j.at("kind").get<std::string>());
  switch (tag) {
    case FieldKindTag::FixedString:
      f.kind = FieldKind::fixed_string(j.at("length").get<uint32_t>());
      break;
    case FieldKindTag::IndexedString:
      f.kind = FieldKind::indexed_string();
      f.data_bytes = j.at("data_bytes").get<uint64_t>();
      break;
    case FieldKindTag::Numeric:
      f.kind = FieldKind::numeric(
          value_type_from_name(j.at("value_type").get<std::string>()),
          j.at("has_validity").get<bool>());
      break;
    case FieldKindTag::Categorical: {
      std::map<std::string, int64_t> key;
      for (const auto& [name, code] : j.at("key").items())
        key[name] = code.get<int64_t>();
      f.kind = FieldKind::categorical(
          value_type_from_name(j.at("value_type").get<std::string>()),
          std::move(key), j.at("leaky").get<bool>());
      break;
    }
    case FieldKindTag::DateTime:
      f.kind = FieldKind::datetime(j.at("has_day").get<bool>(),
                                   j.at("has_validity").get<bool>());
      break;
  }
  return f;
}

int parse_major(const std::string& version) {
  int major = -1;
  auto [p, ec] = std::from_chars(version.data(), version.data() + version.size(), major);
  if (ec != std::errc() || p == version.data() || *p != '.') return -1;
  return major;
}

}  // namespace

std::string meta_to_json(const DatasetMeta& meta) {
  ordered_json j;
  j["format_version"] = meta.format_version;
  j["created_at"] = meta.created_at;
  j["tables"] = ordered_json::array();
  for (const auto& t : meta.tables) {
    ordered_json tj;
    tj["name"] = t.name;
    tj["row_count"] = t.row_count;
    tj["primary_keys"] = t.primary_keys;
    tj["fields"] = ordered_json::array();
    for (const auto& f : t.fields) tj["fields"].push_back(field_to_json(f));
    j["tables"].push_back(std::move(tj));
  }
  j["provenance"] = ordered_json::array();
  for (const auto& p : meta.provenance) {
    ordered_json pj;
    pj["operation"] = p.operation_name;
    pj["version"] = p.operation_version;
    pj["timestamp"] = p.timestamp;
    pj["parameters"] = p.parameters;
    j["provenance"].push_back(std::move(pj));
  }
  return j.dump(2) + "\n";
}

DatasetMeta meta_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    raise(Status::FormatError, "metadata is not valid JSON: ", e.what());
  }
  check(j.is_object() && j.contains("format_version"), Status::FormatError,
        "metadata missing format_version");

  DatasetMeta meta;
  meta.format_version = j.at("format_version").get<std::string>();
  const int major = parse_major(meta.format_version);
  check(major >= 0, Status::FormatError, "malformed format_version '",
        meta.format_version, "'");
  check(major == kFormatMajor, Status::VersionError, "unsupported format_version '",
        meta.format_version, "' (this build reads major version ", kFormatMajor, ")");

  try {
    meta.created_at = j.value("created_at", std::string());
    for (const auto& tj : j.at("tables")) {
      TableMeta t;
      t.name = tj.at("name").get<std::string>();
      t.row_count = tj.at("row_count").get<uint64_t>();
      t.primary_keys = tj.value("primary_keys", std::vector<std::string>{});
      for (const auto& fj : tj.at("fields")) t.fields.push_back(field_from_json(fj));
      check(!meta.find_table(t.name), Status::FormatError, "duplicate table '",
            t.name, "' in metadata");
      meta.tables.push_back(std::move(t));
    }
    for (const auto& pj : j.value("provenance", ordered_json::array())) {
      ProvenanceRecord p;
      p.operation_name = pj.at("operation").get<std::string>();
      p.operation_version = pj.at("version").get<std::string>();
      p.timestamp = pj.value("timestamp", std::string());
      for (const auto& [k, v] : pj.value("parameters", ordered_json::object()).items())
        p.parameters[k] = v.get<std::string>();
      meta.provenance.push_back(std::move(p));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(Status::FormatError, "malformed metadata: ", e.what());
  }

  for (const auto& t : meta.tables) {
    for (const auto& f : t.fields) {
      check(f.row_count == t.row_count, Status::IntegrityError, "table '", t.name,
            "' row_count ", t.row_count, " != field '", f.name, "' row_count ",
            f.row_count);
    }
  }
  return meta;
}

}  // namespace colcur
