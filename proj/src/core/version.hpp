#pragma once

namespace colcur {

// On-disk dataset format version. Readers reject a different major version.
inline constexpr char kFormatVersion[] = "1.0.0";
inline constexpr int kFormatMajor = 1;

inline constexpr char kLibraryVersion[] = "1.0.0";

// Operation versions recorded in provenance. Once an operation version has
// shipped, its behaviour is frozen; changes require a new version string.
inline constexpr char kImportOpVersion[] = "1.0.0";
inline constexpr char kSortOpVersion[] = "1.0.0";
inline constexpr char kJoinOpVersion[] = "1.0.0";
inline constexpr char kAggregateOpVersion[] = "1.0.0";
inline constexpr char kJournalOpVersion[] = "1.0.0";

}  // namespace colcur
