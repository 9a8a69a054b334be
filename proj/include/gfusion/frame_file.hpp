#pragma once

#include <string>
#include <string_view>

#include "frame.hpp"

namespace gfusion
{

//! Gram deviation above which a FrameFile subspace basis is rejected.
inline constexpr double kFileOrthonormalTol = 1e-8;

/*!
 * FrameFile JSON interchange.
 *
 * \code
 * { "dim": n, "semantics": "truncated"|"cyclic", "k_min": int, "k_max": int,
 *   "members": [ { "k": int, "subspace_basis": [[[re, im], ...], ...],
 *                  "theta": [[[re, im], ...], ...] } ] }
 * \endcode
 *
 * Matrices are arrays of rows, entries are [re, im] pairs. The canonical
 * form written by format_frame_file has sorted keys, two-space indentation,
 * one matrix row per line and 17 significant digits, so that
 * format(parse(text)) == text for canonical input.
 */
FrameFamily parse_frame_file(std::string_view text);
std::string format_frame_file(FrameFamily const& family);

FrameFamily load_frame_file(std::string const& path);
//! Writes through a temporary file and renames it into place.
void save_frame_file(FrameFamily const& family, std::string const& path);

//! Write `contents` to `path` atomically (temporary file + rename).
void write_file_atomic(std::string const& path, std::string const& contents);

}  // namespace gfusion
