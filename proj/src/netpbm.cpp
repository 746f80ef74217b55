/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/netpbm.hpp"
#include "geez/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace geez {

namespace {

std::string
read_magic(std::istream& in)
{
	char m[2] = {0, 0};
	in.read(m, 2);
	if (!in || m[0] != 'P') {
		throw ParseError("not a netpbm file");
	}
	return std::string(m, 2);
}

void
skip_space_and_comments(std::istream& in)
{
	for (;;) {
		int const ch = in.peek();
		if (ch == '#') {
			std::string line;
			std::getline(in, line);
		} else if (ch != EOF && std::isspace(ch)) {
			in.get();
		} else {
			return;
		}
	}
}

int
read_header_int(std::istream& in, char const* what)
{
	skip_space_and_comments(in);
	long long v = -1;
	if (!(in >> v) || v < 0 || v > (1LL << 31) - 1) {
		throw ParseError(std::string("bad netpbm header field: ") + what);
	}
	return static_cast<int>(v);
}

std::ifstream
open_in(std::filesystem::path const& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open " + path.string());
	}
	return in;
}

std::ofstream
open_out(std::filesystem::path const& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error("cannot write " + path.string());
	}
	return out;
}

GrayImage
read_pgm_body(std::istream& in, std::string const& magic)
{
	int const width = read_header_int(in, "width");
	int const height = read_header_int(in, "height");
	int const maxval = read_header_int(in, "maxval");
	if (width < 1 || height < 1) {
		throw DimensionError("PGM image must be at least 1x1");
	}
	if (maxval < 1 || maxval > 255) {
		throw ParseError("PGM maxval must be in 1..255");
	}
	GrayImage img(width, height);
	auto scale = [maxval](int v) {
		if (v > maxval) {
			throw ParseError("PGM sample exceeds maxval");
		}
		return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
	};
	if (magic == "P5") {
		in.get();
		std::string buf(static_cast<size_t>(width) * height, '\0');
		in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
		if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
			throw ParseError("truncated PGM raster");
		}
		for (int r = 0; r < height; ++r) {
			for (int c = 0; c < width; ++c) {
				img(r, c) = scale(static_cast<unsigned char>(buf[static_cast<size_t>(r) * width + c]));
			}
		}
	} else {
		for (int r = 0; r < height; ++r) {
			for (int c = 0; c < width; ++c) {
				img(r, c) = scale(read_header_int(in, "sample"));
			}
		}
	}
	return img;
}

BinaryImage
read_pbm_body(std::istream& in, std::string const& magic)
{
	int const width = read_header_int(in, "width");
	int const height = read_header_int(in, "height");
	if (width < 1 || height < 1) {
		throw ParseError("PBM dimensions must be positive");
	}
	BinaryImage img(width, height);
	if (magic == "P4") {
		in.get();
		int const bytes_per_row = (width + 7) / 8;
		std::string buf(static_cast<size_t>(bytes_per_row), '\0');
		for (int r = 0; r < height; ++r) {
			in.read(buf.data(), bytes_per_row);
			if (in.gcount() != bytes_per_row) {
				throw ParseError("truncated PBM raster");
			}
			for (int c = 0; c < width; ++c) {
				auto const byte = static_cast<unsigned char>(buf[c / 8]);
				if ((byte >> (7 - c % 8)) & 1u) {
					img.set(r, c, true);
				}
			}
		}
	} else {
		for (int r = 0; r < height; ++r) {
			for (int c = 0; c < width; ++c) {
				skip_space_and_comments(in);
				int const ch = in.get();
				if (ch != '0' && ch != '1') {
					throw ParseError("bad PBM sample");
				}
				if (ch == '1') {
					img.set(r, c, true);
				}
			}
		}
	}
	return img;
}

} // namespace

GrayImage
read_pgm(std::istream& in)
{
	std::string const magic = read_magic(in);
	if (magic != "P2" && magic != "P5") {
		throw ParseError("expected PGM (P2/P5), got " + magic);
	}
	return read_pgm_body(in, magic);
}

GrayImage
read_pgm(std::filesystem::path const& path)
{
	auto in = open_in(path);
	return read_pgm(in);
}

void
write_pgm(std::ostream& out, GrayImage const& img, PnmEncoding enc)
{
	out << (enc == PnmEncoding::raw ? "P5" : "P2") << '\n'
	    << img.width() << ' ' << img.height() << "\n255\n";
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (enc == PnmEncoding::raw) {
				out.put(static_cast<char>(img(r, c)));
			} else {
				out << static_cast<int>(img(r, c)) << (c + 1 == img.width() ? '\n' : ' ');
			}
		}
	}
}

void
write_pgm(std::filesystem::path const& path, GrayImage const& img, PnmEncoding enc)
{
	auto out = open_out(path);
	write_pgm(out, img, enc);
}

BinaryImage
read_pbm(std::istream& in)
{
	std::string const magic = read_magic(in);
	if (magic != "P1" && magic != "P4") {
		throw ParseError("expected PBM (P1/P4), got " + magic);
	}
	return read_pbm_body(in, magic);
}

BinaryImage
read_pbm(std::filesystem::path const& path)
{
	auto in = open_in(path);
	return read_pbm(in);
}

void
write_pbm(std::ostream& out, BinaryImage const& img, PnmEncoding enc)
{
	out << (enc == PnmEncoding::raw ? "P4" : "P1") << '\n' << img.width() << ' ' << img.height() << '\n';
	if (enc == PnmEncoding::raw) {
		int const bytes_per_row = (img.width() + 7) / 8;
		std::string buf(static_cast<size_t>(bytes_per_row), '\0');
		for (int r = 0; r < img.height(); ++r) {
			std::fill(buf.begin(), buf.end(), '\0');
			for (int c = 0; c < img.width(); ++c) {
				if (img.get(r, c)) {
					buf[c / 8] = static_cast<char>(buf[c / 8] | (0x80 >> (c % 8)));
				}
			}
			out.write(buf.data(), bytes_per_row);
		}
	} else {
		for (int r = 0; r < img.height(); ++r) {
			for (int c = 0; c < img.width(); ++c) {
				out << (img.get(r, c) ? '1' : '0') << (c + 1 == img.width() ? '\n' : ' ');
			}
		}
	}
}

void
write_pbm(std::filesystem::path const& path, BinaryImage const& img, PnmEncoding enc)
{
	auto out = open_out(path);
	write_pbm(out, img, enc);
}

std::variant<GrayImage, BinaryImage>
read_pnm(std::filesystem::path const& path)
{
	auto in = open_in(path);
	std::string const magic = read_magic(in);
	if (magic == "P1" || magic == "P4") {
		return read_pbm_body(in, magic);
	}
	if (magic == "P2" || magic == "P5") {
		return read_pgm_body(in, magic);
	}
	throw ParseError("unsupported netpbm type " + magic);
}

} // namespace geez
