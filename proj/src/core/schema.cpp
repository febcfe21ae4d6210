#include "core/schema.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace colcur {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr char kSchemaKey[] = "schema";
constexpr char kVersionBlockName[] = "colcur";

[[noreturn]] void schema_err(const std::string& where, const std::string& what) {
  raise(Status::SchemaError, where, ": ", what);
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key))
      schema_err(where, "unknown key '" + key + "'");
  }
}

bool parse_flag(const ordered_json& v, const std::string& where, const char* key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "True") return true;
    if (s == "False") return false;
  }
  schema_err(where, std::string("'") + key + "' must be true/false or \"True\"/\"False\"");
}

FieldSchema parse_field(const ordered_json& j, const std::string& where) {
  check(j.is_object(), Status::SchemaError, where, ": field descriptor must be an object");
  check(j.contains("field_type"), Status::SchemaError, where, ": missing field_type");
  const auto type_name = j.at("field_type").get<std::string>();

  FieldSchema fs;
  if (type_name == "numeric") {
    fs.type = FieldSchema::Type::Numeric;
    reject_unknown_keys(j, {"field_type", "value_type", "optional"}, where);
    check(j.contains("value_type"), Status::SchemaError, where,
          ": numeric field requires value_type");
    fs.value_type = value_type_from_name(j.at("value_type").get<std::string>());
    if (j.contains("optional")) fs.optional = parse_flag(j.at("optional"), where, "optional");
  } else if (type_name == "fixed_string") {
    fs.type = FieldSchema::Type::FixedString;
    reject_unknown_keys(j, {"field_type", "length"}, where);
    check(j.contains("length"), Status::SchemaError, where,
          ": fixed_string field requires length");
    const int64_t len = j.at("length").get<int64_t>();
    check(len >= 1, Status::SchemaError, where, ": fixed_string length must be >= 1");
    fs.length = static_cast<uint32_t>(len);
  } else if (type_name == "indexed_string") {
    fs.type = FieldSchema::Type::IndexedString;
    reject_unknown_keys(j, {"field_type"}, where);
  } else if (type_name == "categorical") {
    fs.type = FieldSchema::Type::Categorical;
    reject_unknown_keys(j, {"field_type", "categorical"}, where);
    check(j.contains("categorical"), Status::SchemaError, where,
          ": categorical field requires a 'categorical' descriptor");
    const auto& cat = j.at("categorical");
    reject_unknown_keys(cat, {"value_type", "strings_to_values", "out_of_range"}, where);
    check(cat.contains("value_type") && cat.contains("strings_to_values"),
          Status::SchemaError, where,
          ": categorical requires value_type and strings_to_values");
    fs.value_type = value_type_from_name(cat.at("value_type").get<std::string>());
    check(is_signed_int(fs.value_type), Status::SchemaError, where,
          ": categorical value_type must be a signed integer");
    std::set<int64_t> codes;
    for (const auto& [name, code] : cat.at("strings_to_values").items()) {
      check(code.is_number_integer(), Status::SchemaError, where,
            ": category code for '" + name + "' must be an integer");
      const int64_t c = code.get<int64_t>();
      check(codes.insert(c).second, Status::KeyError, where, ": duplicate category code ",
            c, " (strings_to_values must be injective)");
      check(c >= signed_min(fs.value_type) && c <= signed_max(fs.value_type),
            Status::SchemaError, where, ": category code ", c, " does not fit ",
            value_type_name(fs.value_type));
      fs.categories[name] = c;
    }
    if (cat.contains("out_of_range")) {
      const auto oor = cat.at("out_of_range").get<std::string>();
      check(oor == "freetext", Status::SchemaError, where,
            ": out_of_range must be \"freetext\", got '", oor, "'");
      fs.leaky = true;
      check(!codes.contains(kLeakyCode), Status::KeyError, where,
            ": leaky categorical reserves code ", kLeakyCode,
            "; it cannot appear in strings_to_values");
    }
  } else if (type_name == "datetime") {
    fs.type = FieldSchema::Type::DateTime;
    reject_unknown_keys(j, {"field_type", "optional", "create_day_field"}, where);
    if (j.contains("optional")) fs.optional = parse_flag(j.at("optional"), where, "optional");
    if (j.contains("create_day_field"))
      fs.create_day_field = parse_flag(j.at("create_day_field"), where, "create_day_field");
  } else if (type_name == "date") {
    fs.type = FieldSchema::Type::Date;
    reject_unknown_keys(j, {"field_type", "optional"}, where);
    if (j.contains("optional")) fs.optional = parse_flag(j.at("optional"), where, "optional");
  } else {
    schema_err(where, "unknown field_type '" + type_name + "'");
  }
  return fs;
}

}  // namespace

const FieldSchema* TableSchema::find_field(const std::string& name) const {
  for (const auto& [n, f] : fields)
    if (n == name) return &f;
  return nullptr;
}

const TableSchema* SchemaDoc::find_table(const std::string& name) const {
  for (const auto& [n, t] : tables)
    if (n == name) return &t;
  return nullptr;
}

SchemaDoc parse_schema(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    raise(Status::ParseError, "schema is not valid JSON: ", e.what());
  }
  check(j.is_object(), Status::SchemaError, "schema document must be a JSON object");
  check(j.contains(kSchemaKey), Status::SchemaError,
        "schema document must contain a top-level 'schema' object");

  SchemaDoc doc;
  // Any sibling of "schema" is treated as an opaque tool/version block.
  for (const auto& [key, value] : j.items()) {
    if (key == kSchemaKey) continue;
    check(value.is_object() && value.contains("version") && value.at("version").is_string(),
          Status::SchemaError, "top-level '", key,
          "' must be an object carrying a version string");
    reject_unknown_keys(value, {"version"}, "top-level '" + key + "'");
    doc.version = value.at("version").get<std::string>();
  }

  const auto& tables = j.at(kSchemaKey);
  check(tables.is_object(), Status::SchemaError, "'schema' must be an object of tables");
  for (const auto& [table_name, tj] : tables.items()) {
    const std::string where = "table '" + table_name + "'";
    check(tj.is_object(), Status::SchemaError, where, " must be an object");
    reject_unknown_keys(tj, {"primary_keys", "foreign_keys", "fields"}, where);

    TableSchema ts;
    if (tj.contains("primary_keys")) {
      check(tj.at("primary_keys").is_array(), Status::SchemaError, where,
            ": primary_keys must be an array");
      for (const auto& pk : tj.at("primary_keys"))
        ts.primary_keys.push_back(pk.get<std::string>());
    }
    if (tj.contains("foreign_keys")) {
      for (const auto& [fk_name, fk] : tj.at("foreign_keys").items()) {
        const std::string fk_where = where + " foreign key '" + fk_name + "'";
        check(fk.is_object() && fk.contains("space") && fk.contains("key"),
              Status::SchemaError, fk_where, ": requires 'space' and 'key'");
        reject_unknown_keys(fk, {"space", "key"}, fk_where);
        ts.foreign_keys.emplace_back(
            fk_name, ForeignKeyRef{fk.at("space").get<std::string>(),
                                   fk.at("key").get<std::string>()});
      }
    }
    check(tj.contains("fields"), Status::SchemaError, where, ": missing 'fields'");
    for (const auto& [field_name, fj] : tj.at("fields").items()) {
      ts.fields.emplace_back(field_name,
                             parse_field(fj, where + " field '" + field_name + "'"));
    }
    check(!doc.find_table(table_name), Status::SchemaError, "duplicate table '",
          table_name, "'");
    doc.tables.emplace_back(table_name, std::move(ts));
  }

  // Cross-reference validation.
  for (const auto& [table_name, ts] : doc.tables) {
    for (const auto& pk : ts.primary_keys)
      check(ts.find_field(pk), Status::SchemaError, "table '", table_name,
            "': primary key '", pk, "' is not a declared field");
    for (const auto& [fk_name, ref] : ts.foreign_keys) {
      check(ts.find_field(fk_name), Status::SchemaError, "table '", table_name,
            "': foreign key '", fk_name, "' is not a declared field");
      check(doc.find_table(ref.space), Status::ReferenceError, "table '", table_name,
            "': foreign key '", fk_name, "' references unknown table '", ref.space, "'");
    }
  }
  return doc;
}

SchemaDoc parse_schema_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Status::IoError, "cannot open schema file '", path, "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_schema(text);
}

std::string schema_to_json(const SchemaDoc& doc) {
  ordered_json j;
  j[kVersionBlockName] = {{"version", doc.version.empty() ? "1.0.0" : doc.version}};
  ordered_json tables = ordered_json::object();
  for (const auto& [table_name, ts] : doc.tables) {
    ordered_json tj;
    if (!ts.primary_keys.empty()) tj["primary_keys"] = ts.primary_keys;
    if (!ts.foreign_keys.empty()) {
      ordered_json fks = ordered_json::object();
      for (const auto& [fk_name, ref] : ts.foreign_keys)
        fks[fk_name] = {{"space", ref.space}, {"key", ref.key}};
      tj["foreign_keys"] = std::move(fks);
    }
    ordered_json fields = ordered_json::object();
    for (const auto& [field_name, fs] : ts.fields) {
      ordered_json fj;
      switch (fs.type) {
        case FieldSchema::Type::Numeric:
          fj["field_type"] = "numeric";
          fj["value_type"] = std::string(value_type_name(fs.value_type));
          if (fs.optional) fj["optional"] = true;
          break;
        case FieldSchema::Type::FixedString:
          fj["field_type"] = "fixed_string";
          fj["length"] = fs.length;
          break;
        case FieldSchema::Type::IndexedString:
          fj["field_type"] = "indexed_string";
          break;
        case FieldSchema::Type::Categorical: {
          fj["field_type"] = "categorical";
          ordered_json cat;
          cat["value_type"] = std::string(value_type_name(fs.value_type));
          ordered_json s2v = ordered_json::object();
          for (const auto& [name, code] : fs.categories) s2v[name] = code;
          cat["strings_to_values"] = std::move(s2v);
          if (fs.leaky) cat["out_of_range"] = "freetext";
          fj["categorical"] = std::move(cat);
          break;
        }
        case FieldSchema::Type::DateTime:
          fj["field_type"] = "datetime";
          if (fs.optional) fj["optional"] = true;
          if (fs.create_day_field) fj["create_day_field"] = true;
          break;
        case FieldSchema::Type::Date:
          fj["field_type"] = "date";
          if (fs.optional) fj["optional"] = true;
          break;
      }
      fields[field_name] = std::move(fj);
    }
    tj["fields"] = std::move(fields);
    tables[table_name] = std::move(tj);
  }
  j[kSchemaKey] = std::move(tables);
  return j.dump(2) + "\n";
}

std::string freetext_companion_name(const std::string& field_name) {
  return field_name + "_freetext";
}

FieldKind field_schema_to_kind(const FieldSchema& fs) {
  switch (fs.type) {
    case FieldSchema::Type::Numeric:
      return FieldKind::numeric(fs.value_type, fs.optional);
    case FieldSchema::Type::FixedString:
      return FieldKind::fixed_string(fs.length);
    case FieldSchema::Type::IndexedString:
      return FieldKind::indexed_string();
    case FieldSchema::Type::Categorical:
      return FieldKind::categorical(fs.value_type, fs.categories, fs.leaky);
    case FieldSchema::Type::DateTime:
      return FieldKind::datetime(fs.create_day_field, fs.optional);
    case FieldSchema::Type::Date:
      return FieldKind::datetime(false, fs.optional);
  }
  raise(Status::InternalError, "unreachable field schema type");
}

std::vector<std::pair<std::string, std::vector<TargetField>>> schema_to_field_kinds(
    const TableSchema& ts) {
  std::vector<std::pair<std::string, std::vector<TargetField>>> out;
  out.reserve(ts.fields.size());
  for (const auto& [name, fs] : ts.fields) {
    std::vector<TargetField> targets;
    targets.push_back({name, field_schema_to_kind(fs)});
    if (fs.type == FieldSchema::Type::Categorical && fs.leaky)
      targets.push_back({freetext_companion_name(name), FieldKind::indexed_string()});
    out.emplace_back(name, std::move(targets));
  }
  return out;
}

}  // namespace colcur
