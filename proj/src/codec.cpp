/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/codec.hpp"
#include "geez/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace geez {

namespace {

std::string
at_line(int line, std::string const& msg)
{
	return "line " + std::to_string(line) + ": " + msg;
}

std::string
trim(std::string const& s)
{
	auto const b = s.find_first_not_of(" \t\r\n");
	if (b == std::string::npos) {
		return {};
	}
	auto const e = s.find_last_not_of(" \t\r\n");
	return s.substr(b, e - b + 1);
}

template <typename T>
bool
parse_number(std::string const& s, T& out)
{
	auto const* first = s.data();
	auto const* last = s.data() + s.size();
	auto const [ptr, ec] = std::from_chars(first, last, out);
	return ec == std::errc() && ptr == last;
}

} // namespace

// ---------------------------------------------------------------- class map

std::string
encode_utf8(char32_t cp)
{
	std::string out;
	if (cp < 0x80) {
		out += static_cast<char>(cp);
	} else if (cp < 0x800) {
		out += static_cast<char>(0xC0 | (cp >> 6));
		out += static_cast<char>(0x80 | (cp & 0x3F));
	} else if (cp < 0x10000) {
		out += static_cast<char>(0xE0 | (cp >> 12));
		out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
		out += static_cast<char>(0x80 | (cp & 0x3F));
	} else {
		out += static_cast<char>(0xF0 | (cp >> 18));
		out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
		out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
		out += static_cast<char>(0x80 | (cp & 0x3F));
	}
	return out;
}

std::u32string
decode_utf8(std::string const& text)
{
	std::u32string out;
	size_t i = 0;
	while (i < text.size()) {
		auto const b0 = static_cast<unsigned char>(text[i]);
		int len = 0;
		char32_t cp = 0;
		if (b0 < 0x80) {
			len = 1;
			cp = b0;
		} else if ((b0 & 0xE0) == 0xC0) {
			len = 2;
			cp = b0 & 0x1F;
		} else if ((b0 & 0xF0) == 0xE0) {
			len = 3;
			cp = b0 & 0x0F;
		} else if ((b0 & 0xF8) == 0xF0) {
			len = 4;
			cp = b0 & 0x07;
		} else {
			throw ParseError("invalid UTF-8 lead byte at offset " + std::to_string(i));
		}
		if (i + len > text.size()) {
			throw ParseError("truncated UTF-8 sequence at offset " + std::to_string(i));
		}
		for (int k = 1; k < len; ++k) {
			auto const b = static_cast<unsigned char>(text[i + k]);
			if ((b & 0xC0) != 0x80) {
				throw ParseError("invalid UTF-8 continuation at offset " + std::to_string(i + k));
			}
			cp = (cp << 6) | (b & 0x3F);
		}
		out += cp;
		i += len;
	}
	return out;
}

ClassMap
parse_class_map(std::istream& in)
{
	std::vector<std::pair<int, ClassEntry>> parsed;
	std::set<int> ids;
	std::set<char32_t> cps;
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (trim(line).empty() || trim(line)[0] == '#') {
			continue;
		}
		auto const t1 = line.find('\t');
		auto const t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
		if (t2 == std::string::npos) {
			throw ParseError(at_line(lineno, "expected id<TAB>U+XXXX<TAB>name"));
		}
		std::string const id_text = trim(line.substr(0, t1));
		std::string const cp_text = trim(line.substr(t1 + 1, t2 - t1 - 1));
		std::string const name = line.substr(t2 + 1);

		int id = -1;
		if (!parse_number(id_text, id) || id < 0) {
			throw ParseError(at_line(lineno, "bad class id '" + id_text + "'"));
		}
		if (cp_text.size() < 3 || (cp_text[0] != 'U' && cp_text[0] != 'u') || cp_text[1] != '+') {
			throw ParseError(at_line(lineno, "codepoint must look like U+XXXX, got '" + cp_text + "'"));
		}
		unsigned long cp = 0;
		{
			std::string const hex = cp_text.substr(2);
			auto const [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
			if (ec != std::errc() || ptr != hex.data() + hex.size()) {
				throw ParseError(at_line(lineno, "malformed hex codepoint '" + cp_text + "'"));
			}
		}
		if (cp < ethiopic_first || cp > ethiopic_last) {
			throw ParseError(at_line(lineno, "codepoint " + cp_text + " outside the Ethiopic block U+1200..U+137F"));
		}
		if (!ids.insert(id).second) {
			throw ParseError(at_line(lineno, "duplicate class id " + id_text));
		}
		if (!cps.insert(static_cast<char32_t>(cp)).second) {
			throw ParseError(at_line(lineno, "duplicate codepoint " + cp_text));
		}
		parsed.push_back({id, ClassEntry{static_cast<char32_t>(cp), name}});
	}
	ClassMap map;
	map.entries.resize(parsed.size());
	for (auto& [id, entry] : parsed) {
		if (id >= static_cast<int>(parsed.size())) {
			throw ParseError("class ids must be dense 0.." + std::to_string(parsed.size() - 1) + ", found " +
			                 std::to_string(id));
		}
		map.entries[id] = std::move(entry);
	}
	return map;
}

ClassMap
load_class_map(std::filesystem::path const& path)
{
	std::ifstream in(path);
	if (!in) {
		throw ParseError("cannot open class map " + path.string());
	}
	return parse_class_map(in);
}

void
write_class_map(std::ostream& out, ClassMap const& map)
{
	char buf[16];
	for (int id = 0; id < map.size(); ++id) {
		auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<unsigned long>(map.entries[id].codepoint), 16);
		std::string hex(buf, ptr);
		for (auto& ch : hex) {
			ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
		}
		out << id << "\tU+" << hex << '\t' << map.entries[id].name << '\n';
	}
}

std::string
labels_to_text(std::vector<int> const& ids, ClassMap const& map)
{
	std::string out;
	for (int id : ids) {
		if (id < 0 || id >= map.size()) {
			throw MappingError("class id " + std::to_string(id) + " has no codepoint in the class map");
		}
		out += encode_utf8(map.entries[id].codepoint);
	}
	return out;
}

std::vector<int>
text_to_labels(std::string const& text, ClassMap const& map)
{
	std::vector<int> ids;
	for (char32_t cp : decode_utf8(text)) {
		int found = -1;
		for (int id = 0; id < map.size(); ++id) {
			if (map.entries[id].codepoint == cp) {
				found = id;
				break;
			}
		}
		if (found < 0) {
			char hex[16];
			std::snprintf(hex, sizeof hex, "U+%04X", static_cast<unsigned>(cp));
			throw MappingError(std::string("codepoint ") + hex + " is not mapped");
		}
		ids.push_back(found);
	}
	return ids;
}

// ---------------------------------------------------------------- models

std::string
format_real(double v)
{
	char buf[64];
	auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
	return std::string(buf, ptr);
}

namespace {

void
write_vector(std::ostream& out, char const* tag, Eigen::VectorXd const& v)
{
	out << tag;
	for (Eigen::Index i = 0; i < v.size(); ++i) {
		out << ' ' << format_real(v(i));
	}
	out << '\n';
}

class ModelReader
{
public:
	explicit ModelReader(std::istream& in) : m_in(in) {}

	// Next line split on spaces; the first token must equal `tag`.
	std::vector<std::string> expect(std::string const& tag)
	{
		std::string line;
		if (!std::getline(m_in, line)) {
			throw LoadError("truncated model file: expected '" + tag + "' after line " + std::to_string(m_line));
		}
		++m_line;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		std::vector<std::string> tok;
		std::istringstream ss(line);
		for (std::string t; ss >> t;) {
			tok.push_back(t);
		}
		if (tok.empty() || tok[0] != tag) {
			throw LoadError(at_line(m_line, "expected '" + tag + "'"));
		}
		m_raw = line;
		return tok;
	}

	std::string const& raw() const { return m_raw; }

	template <typename T>
	T number(std::string const& s)
	{
		T v{};
		if (!parse_number(s, v)) {
			throw LoadError(at_line(m_line, "bad number '" + s + "'"));
		}
		return v;
	}

	Eigen::VectorXd vector(std::string const& tag, int expected)
	{
		auto const tok = expect(tag);
		if (static_cast<int>(tok.size()) - 1 != expected) {
			throw LoadError(at_line(m_line, "'" + tag + "' has " + std::to_string(tok.size() - 1) +
			                                    " values, expected " + std::to_string(expected)));
		}
		Eigen::VectorXd v(expected);
		for (int i = 0; i < expected; ++i) {
			v(i) = number<double>(tok[i + 1]);
		}
		return v;
	}

	int line() const { return m_line; }

private:
	std::istream& m_in;
	int m_line = 0;
	std::string m_raw;
};

} // namespace

void
save_model(std::ostream& out, SvmModel const& m)
{
	m.check();
	auto const& k = m.kernel;
	auto const& f = m.feature_config;
	out << "geez-ocr-svm " << model_format_version << '\n';
	out << "kernel " << (k.kind == KernelKind::linear ? "linear" : "poly") << ' ' << k.degree << ' '
	    << format_real(k.gamma) << ' ' << format_real(k.coef0) << '\n';
	out << "classes " << m.n_classes << '\n';
	out << "dim " << m.dim << '\n';
	out << "seed " << m.seed << '\n';
	out << "class_map " << (m.class_map.empty() ? "-" : m.class_map) << '\n';
	out << "features " << f.norm_side << ' ' << f.zones << ' ' << f.hog.cell_px << ' ' << f.hog.block_cells << ' '
	    << f.hog.block_stride_cells << ' ' << f.hog.bins << '\n';
	out << "layout " << m.layout.size() << '\n';
	for (auto const& g : m.layout) {
		out << "group " << g.name << ' ' << g.offset << ' ' << g.length << '\n';
	}
	write_vector(out, "mean", m.mean);
	write_vector(out, "scale", m.scale);
	out << "support " << m.support.rows() << '\n';
	for (Eigen::Index i = 0; i < m.support.rows(); ++i) {
		write_vector(out, "sv", m.support.row(i).transpose());
	}
	for (int c = 0; c < m.n_classes; ++c) {
		auto const& cd = m.classes[c];
		out << "class " << c << ' ' << format_real(cd.bias) << '\n';
		if (k.kind == KernelKind::linear) {
			write_vector(out, "weights", cd.weights);
		} else {
			out << "coef " << cd.support_index.size();
			for (size_t s = 0; s < cd.support_index.size(); ++s) {
				out << ' ' << cd.support_index[s] << ':' << format_real(cd.support_coef[s]);
			}
			out << '\n';
		}
	}
	out << "end\n";
}

void
save_model(std::filesystem::path const& path, SvmModel const& m)
{
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error("cannot write model " + path.string());
	}
	save_model(out, m);
}

SvmModel
load_model(std::istream& in)
{
	ModelReader rd(in);
	SvmModel m;
	auto arg = [&](std::vector<std::string> const& t) -> std::string const& {
		if (t.size() != 2) {
			throw LoadError(at_line(rd.line(), "'" + t.front() + "' takes exactly one value"));
		}
		return t[1];
	};

	auto tok = rd.expect("geez-ocr-svm");
	if (tok.size() != 2) {
		throw LoadError("malformed model header");
	}
	int const version = rd.number<int>(tok[1]);
	if (version != model_format_version) {
		throw LoadError("unsupported model format version " + std::to_string(version) + " (this build reads version " +
		                std::to_string(model_format_version) + ")");
	}

	tok = rd.expect("kernel");
	if (tok.size() != 5 || (tok[1] != "linear" && tok[1] != "poly")) {
		throw LoadError(at_line(rd.line(), "malformed kernel spec"));
	}
	m.kernel.kind = tok[1] == "linear" ? KernelKind::linear : KernelKind::polynomial;
	m.kernel.degree = rd.number<int>(tok[2]);
	m.kernel.gamma = rd.number<double>(tok[3]);
	m.kernel.coef0 = rd.number<double>(tok[4]);

	m.n_classes = rd.number<int>(arg(rd.expect("classes")));
	m.dim = rd.number<int>(arg(rd.expect("dim")));
	m.seed = rd.number<std::uint64_t>(arg(rd.expect("seed")));
	if (m.n_classes < 2 || m.dim < 1) {
		throw LoadError("model header declares " + std::to_string(m.n_classes) + " classes and dimension " +
		                std::to_string(m.dim));
	}
	rd.expect("class_map");
	m.class_map = trim(rd.raw().substr(std::string("class_map").size()));
	if (m.class_map == "-") {
		m.class_map.clear();
	}

	tok = rd.expect("features");
	if (tok.size() != 7) {
		throw LoadError(at_line(rd.line(), "malformed feature config"));
	}
	m.feature_config.norm_side = rd.number<int>(tok[1]);
	m.feature_config.zones = rd.number<int>(tok[2]);
	m.feature_config.hog.cell_px = rd.number<int>(tok[3]);
	m.feature_config.hog.block_cells = rd.number<int>(tok[4]);
	m.feature_config.hog.block_stride_cells = rd.number<int>(tok[5]);
	m.feature_config.hog.bins = rd.number<int>(tok[6]);

	int const groups = rd.number<int>(arg(rd.expect("layout")));
	for (int g = 0; g < groups; ++g) {
		tok = rd.expect("group");
		if (tok.size() != 4) {
			throw LoadError(at_line(rd.line(), "malformed layout group"));
		}
		m.layout.push_back({tok[1], rd.number<int>(tok[2]), rd.number<int>(tok[3])});
	}
	if (!m.layout.empty() && feature_dimension(m.layout) != m.dim) {
		throw LoadError("layout sums to " + std::to_string(feature_dimension(m.layout)) + " but header dim is " +
		                std::to_string(m.dim));
	}

	m.mean = rd.vector("mean", m.dim);
	m.scale = rd.vector("scale", m.dim);

	int const n_sv = rd.number<int>(arg(rd.expect("support")));
	if (n_sv < 0) {
		throw LoadError("negative support count");
	}
	m.support.resize(n_sv, m.dim);
	for (int i = 0; i < n_sv; ++i) {
		m.support.row(i) = rd.vector("sv", m.dim).transpose();
	}

	m.classes.resize(static_cast<size_t>(m.n_classes));
	for (int c = 0; c < m.n_classes; ++c) {
		tok = rd.expect("class");
		if (tok.size() != 3 || rd.number<int>(tok[1]) != c) {
			throw LoadError(at_line(rd.line(), "expected class " + std::to_string(c)));
		}
		auto& cd = m.classes[c];
		cd.bias = rd.number<double>(tok[2]);
		if (m.kernel.kind == KernelKind::linear) {
			cd.weights = rd.vector("weights", m.dim);
		} else {
			tok = rd.expect("coef");
			if (tok.size() < 2) {
				throw LoadError(at_line(rd.line(), "coefficient count missing"));
			}
			int const count = rd.number<int>(tok[1]);
			if (static_cast<int>(tok.size()) != count + 2) {
				throw LoadError(at_line(rd.line(), "coefficient count mismatch"));
			}
			for (int s = 0; s < count; ++s) {
				std::string const& pair = tok[s + 2];
				auto const colon = pair.find(':');
				if (colon == std::string::npos) {
					throw LoadError(at_line(rd.line(), "malformed coefficient '" + pair + "'"));
				}
				cd.support_index.push_back(rd.number<int>(pair.substr(0, colon)));
				cd.support_coef.push_back(rd.number<double>(pair.substr(colon + 1)));
			}
		}
	}
	rd.expect("end");
	try {
		m.check();
	} catch (DimensionError const& e) {
		throw LoadError(std::string("inconsistent model: ") + e.what());
	}
	return m;
}

SvmModel
load_model(std::filesystem::path const& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw LoadError("cannot open model " + path.string());
	}
	return load_model(in);
}

// ---------------------------------------------------------------- manifests

DatasetManifest
parse_manifest(std::istream& in)
{
	DatasetManifest out;
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		std::string const t = trim(line);
		if (t.empty() || t[0] == '#') {
			continue;
		}
		auto const comma = t.rfind(',');
		if (comma == std::string::npos) {
			throw ParseError(at_line(lineno, "expected path,id"));
		}
		std::string const path = trim(t.substr(0, comma));
		std::string const id_text = trim(t.substr(comma + 1));
		int id = -1;
		if (path.empty()) {
			throw ParseError(at_line(lineno, "empty path"));
		}
		if (!parse_number(id_text, id) || id < 0) {
			throw ParseError(at_line(lineno, "bad class id '" + id_text + "'"));
		}
		out.rows.push_back({path, id});
	}
	return out;
}

DatasetManifest
parse_manifest(std::filesystem::path const& path)
{
	std::ifstream in(path);
	if (!in) {
		throw ParseError("cannot open manifest " + path.string());
	}
	return parse_manifest(in);
}

std::pair<DatasetManifest, DatasetManifest>
split_manifest(DatasetManifest const& manifest, double fraction, std::uint64_t seed)
{
	if (!(fraction >= 0.0 && fraction <= 1.0)) {
		throw ParameterError("split fraction must be in [0, 1]");
	}
	auto const n = static_cast<int>(manifest.rows.size());
	auto const n_first = static_cast<int>(std::llround(fraction * n));
	std::vector<int> const perm = seeded_permutation(n, seed);
	std::vector<char> in_first(static_cast<size_t>(n), 0);
	for (int i = 0; i < n_first; ++i) {
		in_first[perm[i]] = 1;
	}
	std::pair<DatasetManifest, DatasetManifest> out;
	for (int i = 0; i < n; ++i) {
		(in_first[i] ? out.first : out.second).rows.push_back(manifest.rows[i]);
	}
	return out;
}

void
check_manifest(DatasetManifest const& manifest, ClassMap const& map)
{
	for (auto const& row : manifest.rows) {
		if (row.class_id >= map.size()) {
			throw MappingError("manifest row '" + row.path + "' names class " + std::to_string(row.class_id) +
			                   ", which the class map lacks");
		}
	}
}

} // namespace geez
