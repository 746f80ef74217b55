/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/pipeline.hpp"
#include "geez/error.hpp"
#include "geez/netpbm.hpp"
#include "geez/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>

namespace geez {

namespace {

template <typename T>
T
parse_value(std::string const& text, std::string const& key)
{
	T v{};
	auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
	if (ec != std::errc() || ptr != text.data() + text.size()) {
		throw ParseError("bad value '" + text + "' for " + key);
	}
	return v;
}

std::string
trim(std::string const& s)
{
	auto const b = s.find_first_not_of(" \t\r\n");
	if (b == std::string::npos) {
		return {};
	}
	return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

template <typename Stage>
auto
run_stage(char const* name, Stage&& stage)
{
	try {
		return stage();
	} catch (StageError const&) {
		throw;
	} catch (std::exception const& e) {
		throw StageError(name, e.what());
	}
}

} // namespace

StructuringElement
parse_se(std::string const& text)
{
	auto const x = text.find_first_of("xX");
	if (x == std::string::npos) {
		throw ParseError("structuring element must be MxN, got '" + text + "'");
	}
	int const m = parse_value<int>(text.substr(0, x), "se rows");
	int const n = parse_value<int>(text.substr(x + 1), "se cols");
	return StructuringElement(m, n);
}

void
PipelineConfig::validate() const
{
	if (denoise.window < 3 || denoise.window % 2 == 0) {
		throw ParameterError("denoise.window must be odd and >= 3");
	}
	if (denoise.noise_variance && *denoise.noise_variance < 0) {
		throw ParameterError("denoise.noise_variance must be nonnegative");
	}
	if (segmenter.min_area < 0) {
		throw ParameterError("segment.min_area must be nonnegative");
	}
	if (!(segmenter.se_scale > 0.0 && segmenter.se_scale <= 2.0)) {
		throw ParameterError("segment.se_scale must be in (0, 2]");
	}
	features.validate();
	if (kernel.kind == KernelKind::polynomial && kernel.degree < 1) {
		throw ParameterError("svm.degree must be >= 1");
	}
	if (!(train.c > 0) || !(train.tol > 0) || train.max_passes < 1) {
		throw ParameterError("svm.c, svm.tol and svm.max_passes must be positive");
	}
}

PipelineConfig
parse_config(std::istream& in, PipelineConfig base)
{
	PipelineConfig cfg = std::move(base);
	using Setter = std::function<void(std::string const&, std::string const&)>;
	std::map<std::string, Setter> const setters = {
		{"denoise.window", [&](auto const& v, auto const& k) { cfg.denoise.window = parse_value<int>(v, k); }},
		{"denoise.noise_variance", [&](auto const& v, auto const& k) {
			if (v.empty() || v == "auto") {
				cfg.denoise.noise_variance.reset();
			} else {
				cfg.denoise.noise_variance = parse_value<double>(v, k);
			}
		}},
		{"segment.min_area", [&](auto const& v, auto const& k) { cfg.segmenter.min_area = parse_value<long long>(v, k); }},
		{"segment.se_scale", [&](auto const& v, auto const& k) { cfg.segmenter.se_scale = parse_value<double>(v, k); }},
		{"segment.se", [&](auto const& v, auto const&) {
			if (v.empty() || v == "auto") {
				cfg.segmenter.se_override.reset();
			} else {
				cfg.segmenter.se_override = parse_se(v);
			}
		}},
		{"features.norm_side", [&](auto const& v, auto const& k) { cfg.features.norm_side = parse_value<int>(v, k); }},
		{"features.zones", [&](auto const& v, auto const& k) { cfg.features.zones = parse_value<int>(v, k); }},
		{"features.hog.cell_px", [&](auto const& v, auto const& k) { cfg.features.hog.cell_px = parse_value<int>(v, k); }},
		{"features.hog.block_cells", [&](auto const& v, auto const& k) { cfg.features.hog.block_cells = parse_value<int>(v, k); }},
		{"features.hog.block_stride_cells",
		 [&](auto const& v, auto const& k) { cfg.features.hog.block_stride_cells = parse_value<int>(v, k); }},
		{"features.hog.bins", [&](auto const& v, auto const& k) { cfg.features.hog.bins = parse_value<int>(v, k); }},
		{"svm.kernel", [&](auto const& v, auto const& k) {
			if (v == "linear") {
				cfg.kernel.kind = KernelKind::linear;
			} else if (v == "poly" || v == "polynomial") {
				cfg.kernel.kind = KernelKind::polynomial;
			} else {
				throw ParseError("bad value '" + v + "' for " + k);
			}
		}},
		{"svm.degree", [&](auto const& v, auto const& k) { cfg.kernel.degree = parse_value<int>(v, k); }},
		{"svm.gamma", [&](auto const& v, auto const& k) { cfg.kernel.gamma = parse_value<double>(v, k); }},
		{"svm.coef0", [&](auto const& v, auto const& k) { cfg.kernel.coef0 = parse_value<double>(v, k); }},
		{"svm.c", [&](auto const& v, auto const& k) { cfg.train.c = parse_value<double>(v, k); }},
		{"svm.tol", [&](auto const& v, auto const& k) { cfg.train.tol = parse_value<double>(v, k); }},
		{"svm.max_passes", [&](auto const& v, auto const& k) { cfg.train.max_passes = parse_value<int>(v, k); }},
		{"svm.seed", [&](auto const& v, auto const& k) { cfg.train.seed = parse_value<std::uint64_t>(v, k); }},
	};

	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		std::string const t = trim(line);
		if (t.empty() || t[0] == '#') {
			continue;
		}
		auto const eq = t.find('=');
		if (eq == std::string::npos) {
			throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
		}
		std::string const key = trim(t.substr(0, eq));
		std::string const value = trim(t.substr(eq + 1));
		auto const it = setters.find(key);
		if (it == setters.end()) {
			throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
		}
		try {
			it->second(value, key);
		} catch (Error const& e) {
			throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
		}
	}
	try {
		cfg.validate();
	} catch (ParameterError const& e) {
		throw ParseError(std::string("invalid configuration: ") + e.what());
	}
	return cfg;
}

PipelineConfig
load_config(std::filesystem::path const& path, PipelineConfig base)
{
	std::ifstream in(path);
	if (!in) {
		throw ParseError("cannot open config " + path.string());
	}
	return parse_config(in, std::move(base));
}

SegmentedChar
load_glyph(std::filesystem::path const& path)
{
	auto const img = read_pnm(path);
	if (auto const* gray = std::get_if<GrayImage>(&img)) {
		return tight_glyph(binarize(*gray, isodata_threshold(*gray)));
	}
	return tight_glyph(std::get<BinaryImage>(img));
}

std::vector<LabeledSample>
load_samples(DatasetManifest const& manifest, FeatureConfig const& cfg, std::filesystem::path const& base_dir)
{
	std::vector<LabeledSample> out(manifest.rows.size());
	parallel_for(static_cast<int>(out.size()), [&](int i) {
		auto const& row = manifest.rows[i];
		std::filesystem::path p = row.path;
		if (p.is_relative()) {
			p = base_dir / p;
		}
		try {
			out[i] = {assemble(load_glyph(p), cfg).values, row.class_id};
		} catch (Error const& e) {
			throw LoadError(p.string() + ": " + e.what());
		}
	});
	return out;
}

BinaryImage
preprocess_page(GrayImage const& page, DenoiseParams const& params, Threshold* chosen)
{
	GrayImage const clean = run_stage("denoise", [&] { return adaptive_denoise(page, params); });
	Threshold const t = run_stage("threshold", [&] { return isodata_threshold(clean); });
	if (chosen) {
		*chosen = t;
	}
	if (clean.pixels().minCoeff() == clean.pixels().maxCoeff()) {
		// No contrast, so no ink; Isodata would put every pixel on one side.
		return BinaryImage(page.width(), page.height());
	}
	return run_stage("binarize", [&] { return binarize(clean, t); });
}

Recognition
recognize_binary(BinaryImage const& page, SvmModel const& model, ClassMap const& map, PipelineConfig const& cfg)
{
	std::vector<SegmentedChar> const segs = run_stage("segment", [&] {
		return order_reading(segment_modified(page, cfg.segmenter));
	});

	Recognition out;
	out.glyphs.resize(segs.size());
	run_stage("classify", [&] {
		parallel_for(static_cast<int>(segs.size()), [&](int i) {
			GlobalFeatureVector const f = assemble(segs[i], model.feature_config);
			Eigen::VectorXd const values = decision_values(model, f.values);
			int const best = argmax_lowest(values);
			double runner_up = -std::numeric_limits<double>::infinity();
			for (int k = 0; k < values.size(); ++k) {
				if (k != best) {
					runner_up = std::max(runner_up, values(k));
				}
			}
			out.glyphs[i] = {segs[i].source_box, best, values(best) - runner_up};
		});
		return 0;
	});

	std::vector<int> ids;
	ids.reserve(out.glyphs.size());
	for (auto const& g : out.glyphs) {
		ids.push_back(g.class_id);
	}
	out.text = run_stage("map", [&] { return labels_to_text(ids, map); });
	return out;
}

Recognition
recognize_page(GrayImage const& page, SvmModel const& model, ClassMap const& map, PipelineConfig const& cfg)
{
	return recognize_binary(preprocess_page(page, cfg.denoise), model, map, cfg);
}

} // namespace geez
