/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace geez {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Raster shapes that do not fit together (ragged rows, empty inputs).
class DimensionError : public Error
{
public:
	using Error::Error;
};

class BoundsError : public Error
{
public:
	using Error::Error;
};

/// Invalid numeric parameter (even window, zero-sized SE, bad zoning grid).
class ParameterError : public Error
{
public:
	using Error::Error;
};

/// Malformed text input. The message carries the line number when known.
class ParseError : public Error
{
public:
	using Error::Error;
};

class MappingError : public Error
{
public:
	using Error::Error;
};

class TrainingError : public Error
{
public:
	using Error::Error;
};

class LoadError : public Error
{
public:
	using Error::Error;
};

class LayoutError : public Error
{
public:
	using Error::Error;
};

/// Error raised by a pipeline stage; `stage()` names it for diagnostics.
class StageError : public Error
{
public:
	StageError(std::string stage, std::string const& what)
	:	Error(what), m_stage(std::move(stage))
	{
	}

	std::string const& stage() const noexcept { return m_stage; }

private:
	std::string m_stage;
};

} // namespace geez
