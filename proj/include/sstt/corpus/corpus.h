#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sstt/cli/driver.h"
#include "sstt/kernel/module.h"

namespace sstt::corpus {

// One `FILE  EXPECTED` line of manifest.txt. A template file is written
// `lari.sst[b1]` and instantiated at the named shape inclusion.
struct ManifestEntry {
  std::string file;
  std::string instance;  // empty unless the file is a template
  std::string expected;  // `ok` or `expected-error:CLASS`
  int line = 0;

  std::string label() const { return instance.empty() ? file : file + "[" + instance + "]"; }
  bool expects_ok() const { return expected == "ok"; }
  // The class name after `expected-error:`.
  std::string expected_class() const;
};

std::vector<ManifestEntry> parse_manifest(std::string_view text);

// Replaces the template placeholders for the inclusion `j` (a standard
// inclusion name, or `J*K` for the Leibniz tensor of two of them):
//   $J      identifier suffix, e.g. `b1xi0`
//   $VARS   cube variables of j, e.g. `s s2`
//   $PTS    the same as a point list, e.g. `s, s2`
//   $PSI    codomain tope of j;  $PHI  domain tope of j
//   $BVARS  `t` followed by $VARS, the cube of b1 (x) j
//   $BPTS   the same as a point list
//   $BPSI   codomain tope of b1 (x) j;  $BPHI  domain tope of b1 (x) j
std::string instantiate(std::string_view text, const std::string& j);

struct LoadedEntry {
  ManifestEntry entry;
  cli::Source source;
};

// Reads the manifest in `dir` and every file it names, instantiating
// templates. Throws std::runtime_error on unreadable files.
std::vector<LoadedEntry> load(const std::string& dir);

struct EntryResult {
  ManifestEntry entry;
  cli::FileReport report;
  bool pass = false;
  // What happened, e.g. `ok`, `expected-error:boundary-mismatch`.
  std::string actual;
};

struct CorpusReport {
  std::vector<EntryResult> entries;
  kernel::SweepReport sweep;
  // Declarations checked by the `ok` entries.
  std::size_t declarations = 0;

  bool ok() const;
};

// Checks the `ok` entries in manifest order in one environment. Each
// expected-error entry is checked against a copy of the environment built so
// far and passes when its first failing declaration has the expected class.
// Finishes with the boundary sweep over every global the `ok` entries define.
CorpusReport run(const std::vector<LoadedEntry>& entries, const kernel::CheckOptions& options = {});

// $SSTT_CORPUS_DIR if set, else the corpus directory of the source tree.
std::string default_dir();

}  // namespace sstt::corpus
