#!/usr/bin/env python3
"""Regenerate include/pdm/manifest_data.hpp from data/systems.json."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
text = (root / "data" / "systems.json").read_text()
out = root / "include" / "pdm" / "manifest_data.hpp"
out.write_text(
    "#pragma once\n\n"
    "// Generated by tools/embed_manifest.py from data/systems.json. Do not edit by hand.\n\n"
    "namespace pdm {\n\n"
    'inline constexpr const char* kBuiltinManifest = R"MANIFEST(' + text + ')MANIFEST";\n\n'
    "}  // namespace pdm\n"
)
