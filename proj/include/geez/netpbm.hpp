/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"

#include <filesystem>
#include <iosfwd>
#include <variant>

namespace geez {

// Netpbm I/O. PGM accepts P2/P5 with maxval up to 255 (rescaled to 0..255).
// PBM 1 = black = foreground, identical to BinaryImage's convention.

enum class PnmEncoding { ascii, raw };

GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(std::filesystem::path const& path);
void write_pgm(std::ostream& out, GrayImage const& img, PnmEncoding enc = PnmEncoding::raw);
void write_pgm(std::filesystem::path const& path, GrayImage const& img, PnmEncoding enc = PnmEncoding::raw);

BinaryImage read_pbm(std::istream& in);
BinaryImage read_pbm(std::filesystem::path const& path);
void write_pbm(std::ostream& out, BinaryImage const& img, PnmEncoding enc = PnmEncoding::raw);
void write_pbm(std::filesystem::path const& path, BinaryImage const& img, PnmEncoding enc = PnmEncoding::raw);

/// Reads either a PBM or a PGM, dispatching on the magic number.
std::variant<GrayImage, BinaryImage> read_pnm(std::filesystem::path const& path);

} // namespace geez
