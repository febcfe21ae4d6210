#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace colcur::io {

// Process-wide I/O accounting, keyed by path. Reads and writes are chunk
// granular so the bookkeeping cost is negligible; tests use it to assert
// laziness and single-pass bounds.
struct stats {
  static void reset();
  static void record_read(const std::string& path, uint64_t bytes);
  static void record_write(const std::string& path, uint64_t bytes);
  static uint64_t bytes_read_matching(std::string_view substr);
  static uint64_t bytes_written_matching(std::string_view substr);
  static uint64_t total_bytes_read();
};

uint64_t file_size(const std::filesystem::path& path);

// Random-access reader over one file (pread, no shared cursor state).
class FileReader {
 public:
  explicit FileReader(const std::filesystem::path& path);
  ~FileReader();
  FileReader(FileReader&&) noexcept;
  FileReader& operator=(FileReader&&) noexcept;
  FileReader(const FileReader&) = delete;
  FileReader& operator=(const FileReader&) = delete;

  uint64_t size() const { return size_; }
  void read_at(uint64_t offset, void* buf, size_t n) const;

 private:
  int fd_ = -1;
  uint64_t size_ = 0;
  std::string path_;
};

// Append-only buffered writer.
class FileWriter {
 public:
  explicit FileWriter(const std::filesystem::path& path);
  ~FileWriter();
  FileWriter(FileWriter&&) noexcept;
  FileWriter& operator=(FileWriter&&) noexcept;
  FileWriter(const FileWriter&) = delete;
  FileWriter& operator=(const FileWriter&) = delete;

  void append(const void* buf, size_t n);
  uint64_t bytes_written() const { return written_; }
  void close();  // flushes; throws on failure

 private:
  std::FILE* f_ = nullptr;
  uint64_t written_ = 0;
  std::string path_;
};

// Writes `content` to a temp file in the target's directory, then renames it
// over the target so a crash never leaves a half-written file behind.
void atomic_write_file(const std::filesystem::path& target, std::string_view content);

// Test hook: when set, atomic_write_file stops after the temp write (as if the
// process died before the rename) and throws.
extern std::atomic<bool> fail_before_rename_for_testing;

}  // namespace colcur::io
