#include "core/io.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <unordered_map>

#include "core/error.hpp"
#include "core/time_util.hpp"

namespace colcur::io {

namespace {

struct StatsRegistry {
  std::mutex mu;
  std::unordered_map<std::string, uint64_t> read_bytes;
  std::unordered_map<std::string, uint64_t> write_bytes;
};

StatsRegistry& registry() {
  static StatsRegistry r;
  return r;
}

uint64_t sum_matching(const std::unordered_map<std::string, uint64_t>& m,
                      std::string_view substr) {
  uint64_t total = 0;
  for (const auto& [path, bytes] : m) {
    if (path.find(substr) != std::string::npos) total += bytes;
  }
  return total;
}

}  // namespace

void stats::reset() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.read_bytes.clear();
  r.write_bytes.clear();
}

void stats::record_read(const std::string& path, uint64_t bytes) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.read_bytes[path] += bytes;
}

void stats::record_write(const std::string& path, uint64_t bytes) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.write_bytes[path] += bytes;
}

uint64_t stats::bytes_read_matching(std::string_view substr) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return sum_matching(r.read_bytes, substr);
}

uint64_t stats::bytes_written_matching(std::string_view substr) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return sum_matching(r.write_bytes, substr);
}

uint64_t stats::total_bytes_read() { return bytes_read_matching(""); }

uint64_t file_size(const std::filesystem::path& path) {
  std::error_code ec;
  const auto n = std::filesystem::file_size(path, ec);
  if (ec) raise(Status::IoError, "cannot stat '", path.string(), "': ", ec.message());
  return static_cast<uint64_t>(n);
}

FileReader::FileReader(const std::filesystem::path& path) : path_(path.string()) {
  fd_ = ::open(path_.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0)
    raise(Status::IoError, "cannot open '", path_, "': ", std::strerror(errno));
  struct stat st{};
  if (::fstat(fd_, &st) != 0) {
    ::close(fd_);
    raise(Status::IoError, "cannot stat '", path_, "': ", std::strerror(errno));
  }
  size_ = static_cast<uint64_t>(st.st_size);
}

FileReader::~FileReader() {
  if (fd_ >= 0) ::close(fd_);
}

FileReader::FileReader(FileReader&& other) noexcept
    : fd_(other.fd_), size_(other.size_), path_(std::move(other.path_)) {
  other.fd_ = -1;
}

FileReader& FileReader::operator=(FileReader&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    size_ = other.size_;
    path_ = std::move(other.path_);
    other.fd_ = -1;
  }
  return *this;
}

void FileReader::read_at(uint64_t offset, void* buf, size_t n) const {
  if (n == 0) return;
  if (offset + n > size_)
    raise(Status::BoundsError, "read past end of '", path_, "' (offset ", offset,
          " + ", n, " > ", size_, ")");
  auto* p = static_cast<char*>(buf);
  size_t remaining = n;
  uint64_t off = offset;
  while (remaining > 0) {
    const ssize_t got = ::pread(fd_, p, remaining, static_cast<off_t>(off));
    if (got < 0) {
      if (errno == EINTR) continue;
      raise(Status::IoError, "read failed on '", path_, "': ", std::strerror(errno));
    }
    if (got == 0)
      raise(Status::IoError, "unexpected end of file on '", path_, "'");
    p += got;
    remaining -= static_cast<size_t>(got);
    off += static_cast<uint64_t>(got);
  }
  stats::record_read(path_, n);
}

FileWriter::FileWriter(const std::filesystem::path& path) : path_(path.string()) {
  f_ = std::fopen(path_.c_str(), "wb");
  if (!f_)
    raise(Status::IoError, "cannot create '", path_, "': ", std::strerror(errno));
}

FileWriter::~FileWriter() {
  if (f_) std::fclose(f_);
}

FileWriter::FileWriter(FileWriter&& other) noexcept
    : f_(other.f_), written_(other.written_), path_(std::move(other.path_)) {
  other.f_ = nullptr;
}

FileWriter& FileWriter::operator=(FileWriter&& other) noexcept {
  if (this != &other) {
    if (f_) std::fclose(f_);
    f_ = other.f_;
    written_ = other.written_;
    path_ = std::move(other.path_);
    other.f_ = nullptr;
  }
  return *this;
}

void FileWriter::append(const void* buf, size_t n) {
  if (n == 0) return;
  if (!f_) raise(Status::StateError, "writer for '", path_, "' is closed");
  if (std::fwrite(buf, 1, n, f_) != n)
    raise(Status::IoError, "write failed on '", path_, "': ", std::strerror(errno));
  written_ += n;
  stats::record_write(path_, n);
}

void FileWriter::close() {
  if (!f_) return;
  const int rc = std::fclose(f_);
  f_ = nullptr;
  if (rc != 0)
    raise(Status::IoError, "flush failed on '", path_, "': ", std::strerror(errno));
}

std::atomic<bool> fail_before_rename_for_testing{false};

void atomic_write_file(const std::filesystem::path& target, std::string_view content) {
  const auto tmp = target.parent_path() /
                   (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    FileWriter w(tmp);
    w.append(content.data(), content.size());
    w.close();
  }
  if (fail_before_rename_for_testing.load()) {
    raise(Status::IoError, "simulated crash before rename of '", target.string(), "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec)
    raise(Status::IoError, "rename '", tmp.string(), "' -> '", target.string(),
          "' failed: ", ec.message());
}

}  // namespace colcur::io

namespace colcur {

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        now.time_since_epoch())
                        .count();
  std::string s = format_datetime(static_cast<double>(secs));
  s[10] = 'T';
  return s + "Z";
}

double posix_now() {
  const auto now = std::chrono::system_clock::now();
  return std::chrono::duration<double>(now.time_since_epoch()).count();
}

}  // namespace colcur
