#!/usr/bin/env python3
"""Embed a calibration table JSON file as include/c3d/builtin_calibration.hpp."""
import json
import sys
from pathlib import Path

HEADER = '''#pragma once

// Generated by tools/embed_calibration.py from a `c3d calibrate` table; do not edit.

#include <nlohmann/json.hpp>

#include "c3d/calibrate.hpp"

namespace c3d {{

inline constexpr const char* kBuiltinCalibrationJson = R"json({body})json";

// Default table used when no calibration file is given.
inline CalibrationTable builtin_calibration() {{
  return CalibrationTable::from_json(nlohmann::json::parse(kBuiltinCalibrationJson));
}}

}}  // namespace c3d
'''


def main() -> int:
    if len(sys.argv) != 3:
        print("usage: embed_calibration.py TABLE.json OUT.hpp", file=sys.stderr)
        return 2
    table = json.loads(Path(sys.argv[1]).read_text())
    Path(sys.argv[2]).write_text(HEADER.format(body=json.dumps(table, indent=1)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
