#include "core/dataset.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/time_util.hpp"
#include "core/version.hpp"

namespace colcur {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Status::IoError, "cannot open '", path.string(), "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

}  // namespace

Dataset Dataset::create(const fs::path& root) {
  std::error_code ec;
  if (fs::exists(root, ec)) {
    check(fs::is_directory(root, ec), Status::IoError, "'", root.string(),
          "' exists and is not a directory");
    check(fs::is_empty(root, ec), Status::StateError, "dataset exists: '",
          root.string(), "' is not empty");
  } else {
    fs::create_directories(root, ec);
    if (ec)
      raise(Status::IoError, "cannot create '", root.string(), "': ", ec.message());
  }

  Dataset ds;
  ds.root_ = root;
  ds.mode_ = OpenMode::ReadWrite;
  ds.meta_.format_version = kFormatVersion;
  ds.meta_.created_at = utc_now_iso8601();
  ds.save();
  return ds;
}

Dataset Dataset::open(const fs::path& root, OpenMode mode) {
  Dataset ds;
  ds.root_ = root;
  ds.mode_ = mode;
  const auto meta_path = ds.metadata_path();
  check(fs::exists(meta_path), Status::FormatError, "no dataset at '", root.string(),
        "' (missing dataset.json)");
  ds.meta_ = meta_from_json(read_text_file(meta_path));
  ds.verify_integrity();
  return ds;
}

void Dataset::verify_integrity() const {
  for (const auto& t : meta_.tables) {
    for (const auto& f : t.fields) {
      const auto where = [&] { return "table '" + t.name + "' field '" + f.name + "'"; };
      const auto check_file = [&](const char* ext, uint64_t expected) {
        const auto path = field_file(t.name, f.name, ext);
        std::error_code ec;
        check(fs::exists(path, ec), Status::IntegrityError, where(), ": missing file '",
              path.string(), "'");
        const uint64_t actual = io::file_size(path);
        check(actual == expected, Status::IntegrityError, where(), ": '",
              path.string(), "' is ", actual, " bytes, expected ", expected);
      };

      check_file(".dat", expected_dat_bytes(f));
      if (f.kind.tag == FieldKindTag::IndexedString)
        check_file(".idx", expected_idx_bytes(f));
      if (f.kind.has_validity) check_file(".valid", f.row_count);
      if (f.kind.has_day) check_file(".day", f.row_count * 8);
    }
  }
}

bool Dataset::has_table(const std::string& name) const {
  return meta_.find_table(name) != nullptr;
}

const TableMeta& Dataset::table(const std::string& name) const {
  const auto* t = meta_.find_table(name);
  if (!t) raise(Status::NameError, "no table '", name, "' in dataset");
  return *t;
}

TableMeta& Dataset::mutable_table(const std::string& name) {
  auto* t = meta_.find_table(name);
  if (!t) raise(Status::NameError, "no table '", name, "' in dataset");
  return *t;
}

const FieldMeta& Dataset::field(const std::string& table_name,
                                const std::string& field_name) const {
  const auto* f = table(table_name).find_field(field_name);
  if (!f)
    raise(Status::NameError, "no field '", field_name, "' in table '", table_name, "'");
  return *f;
}

TableMeta& Dataset::add_table(const std::string& name,
                              std::vector<std::string> primary_keys) {
  check(writable(), Status::PermissionError, "dataset is read-only");
  check(!has_table(name), Status::NameError, "table '", name, "' already exists");
  check(!name.empty() && name.find('/') == std::string::npos &&
            name.find("..") == std::string::npos,
        Status::NameError, "invalid table name '", name, "'");
  std::error_code ec;
  fs::create_directories(table_dir(name), ec);
  if (ec)
    raise(Status::IoError, "cannot create table directory: ", ec.message());
  TableMeta t;
  t.name = name;
  t.primary_keys = std::move(primary_keys);
  meta_.tables.push_back(std::move(t));
  return meta_.tables.back();
}

void Dataset::append_provenance(ProvenanceRecord record) {
  check(writable(), Status::PermissionError, "dataset is read-only");
  meta_.provenance.push_back(std::move(record));
  save();
}

void Dataset::save() {
  check(writable(), Status::PermissionError, "dataset is read-only");
  io::atomic_write_file(metadata_path(), meta_to_json(meta_));
}

fs::path Dataset::field_file(const std::string& table_name,
                             const std::string& field_name,
                             const char* extension) const {
  return root_ / table_name / (field_name + extension);
}

uint64_t expected_dat_bytes(const FieldMeta& f) {
  if (f.kind.tag == FieldKindTag::IndexedString) return f.data_bytes;
  return f.row_count * f.kind.value_byte_width();
}

uint64_t expected_idx_bytes(const FieldMeta& f) { return (f.row_count + 1) * 8; }

}  // namespace colcur
