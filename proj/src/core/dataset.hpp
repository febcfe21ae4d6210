#pragma once

#include <filesystem>
#include <string>

#include "core/metadata.hpp"

namespace colcur {

enum class OpenMode { Read, ReadWrite };

// Directory-backed columnar dataset: one JSON metadata file plus per-field
// binary files under <root>/<table>/. Opening loads metadata only; column
// data is never touched until a read asks for it.
class Dataset {
 public:
  static Dataset create(const std::filesystem::path& root);
  static Dataset open(const std::filesystem::path& root, OpenMode mode);

  const std::filesystem::path& root() const { return root_; }
  OpenMode mode() const { return mode_; }
  bool writable() const { return mode_ == OpenMode::ReadWrite; }

  const DatasetMeta& meta() const { return meta_; }

  bool has_table(const std::string& name) const;
  const TableMeta& table(const std::string& name) const;  // NameError if absent
  const FieldMeta& field(const std::string& table_name,
                         const std::string& field_name) const;

  // Registers an empty table. Row count is fixed by the first field written.
  TableMeta& add_table(const std::string& name,
                       std::vector<std::string> primary_keys = {});

  void append_provenance(ProvenanceRecord record);

  // Atomically rewrites dataset.json (temp file + rename).
  void save();

  std::filesystem::path metadata_path() const { return root_ / "dataset.json"; }
  std::filesystem::path table_dir(const std::string& table_name) const {
    return root_ / table_name;
  }
  std::filesystem::path field_file(const std::string& table_name,
                                   const std::string& field_name,
                                   const char* extension) const;

  // Mutable access for writers; callers must keep metadata consistent and save().
  TableMeta& mutable_table(const std::string& name);

 private:
  Dataset() = default;
  void verify_integrity() const;

  std::filesystem::path root_;
  OpenMode mode_ = OpenMode::Read;
  DatasetMeta meta_;
};

// File-length expectations per kind; shared by the opener and the tests.
uint64_t expected_dat_bytes(const FieldMeta& f);
uint64_t expected_idx_bytes(const FieldMeta& f);

}  // namespace colcur
