/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/svm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace geez {

/// Ethiopic block (Unicode 10.0); the only codepoints a class may map to.
inline constexpr char32_t ethiopic_first = 0x1200;
inline constexpr char32_t ethiopic_last = 0x137F;

struct ClassEntry
{
	char32_t codepoint = 0;
	std::string name;
};

/// Dense class id -> codepoint table; entries[id].
struct ClassMap
{
	std::vector<ClassEntry> entries;

	int size() const { return static_cast<int>(entries.size()); }
};

/// Parses `id<TAB>U+XXXX<TAB>name` lines. Blank lines and `#` comments are skipped.
ClassMap parse_class_map(std::istream& in);
ClassMap load_class_map(std::filesystem::path const& path);
void write_class_map(std::ostream& out, ClassMap const& map);

std::string encode_utf8(char32_t cp);
std::u32string decode_utf8(std::string const& text);

/// UTF-8 text of the mapped codepoints, in the given order.
std::string labels_to_text(std::vector<int> const& ids, ClassMap const& map);
std::vector<int> text_to_labels(std::string const& text, ClassMap const& map);

inline constexpr int model_format_version = 1;

void save_model(std::ostream& out, SvmModel const& m);
void save_model(std::filesystem::path const& path, SvmModel const& m);
SvmModel load_model(std::istream& in);
SvmModel load_model(std::filesystem::path const& path);

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_real(double v);

struct ManifestRow
{
	std::string path;
	int class_id = 0;
};

struct DatasetManifest
{
	std::vector<ManifestRow> rows;
};

/// `path,id` per line, `#` comments and blank lines skipped.
DatasetManifest parse_manifest(std::istream& in);
DatasetManifest parse_manifest(std::filesystem::path const& path);

/// Seeded partition: round(fraction * n) rows go to the first half.
std::pair<DatasetManifest, DatasetManifest> split_manifest(
	DatasetManifest const& manifest, double fraction, std::uint64_t seed
);

/// Throws MappingError when a manifest row names a class the map lacks.
void check_manifest(DatasetManifest const& manifest, ClassMap const& map);

} // namespace geez
