/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/codec.hpp"
#include "geez/features.hpp"
#include "geez/preprocess.hpp"
#include "geez/segmentation.hpp"
#include "geez/svm.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace geez {

/// Everything a run can be configured with, loaded from `key=value` files.
struct PipelineConfig
{
	DenoiseParams denoise;
	SegmenterConfig segmenter;
	FeatureConfig features;
	KernelSpec kernel;
	TrainParams train;

	void validate() const;
};

/**
 * Reads `key=value` lines (blank lines and `#` comments ignored) on top of
 * `base`. Unknown keys, malformed values and invalid combinations throw
 * ParseError naming the line.
 *
 * Keys: denoise.window, denoise.noise_variance, segment.min_area,
 * segment.se_scale, segment.se (MxN), features.norm_side, features.zones,
 * features.hog.cell_px, features.hog.block_cells,
 * features.hog.block_stride_cells, features.hog.bins, svm.kernel
 * (linear|poly), svm.degree, svm.gamma, svm.coef0, svm.c, svm.tol,
 * svm.max_passes, svm.seed.
 */
PipelineConfig parse_config(std::istream& in, PipelineConfig base = {});
PipelineConfig load_config(std::filesystem::path const& path, PipelineConfig base = {});

/// Parses "MxN" (rows x cols).
StructuringElement parse_se(std::string const& text);

struct GlyphDiagnostic
{
	BoundingBox box;
	int class_id = 0;
	double margin = 0.0; ///< best minus runner-up decision value
};

struct Recognition
{
	std::string text;
	std::vector<GlyphDiagnostic> glyphs;
};

/// Reads a glyph image (PBM as is, PGM through Isodata) and crops it to its ink.
SegmentedChar load_glyph(std::filesystem::path const& path);

/// Loads every manifest row as a feature vector; relative paths resolve against `base_dir`.
std::vector<LabeledSample> load_samples(
	DatasetManifest const& manifest, FeatureConfig const& cfg, std::filesystem::path const& base_dir
);

/// Binarized page after denoising and Isodata thresholding.
BinaryImage preprocess_page(GrayImage const& page, DenoiseParams const& params, Threshold* chosen = nullptr);

/**
 * Full page recognition: denoise, Isodata, binarize, modified segmentation,
 * reading order, features (with the model's feature config), one-vs-rest
 * prediction and mapping to text. Stage failures are rethrown as
 * StageError tagged with the stage name.
 */
Recognition recognize_page(GrayImage const& page, SvmModel const& model, ClassMap const& map, PipelineConfig const& cfg);
Recognition recognize_binary(BinaryImage const& page, SvmModel const& model, ClassMap const& map, PipelineConfig const& cfg);

} // namespace geez
