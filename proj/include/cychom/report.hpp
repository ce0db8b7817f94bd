#pragma once

#include "cychom/thms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cychom {

enum class ReportFormat { Markdown, Csv, Json };

std::optional<ReportFormat> report_format_of(const std::string& s);

/* One homology-table row. n is a marked-letter count, r a filtration
 * step; both stay zero for tables that do not carry them. */
struct TableCell {
    std::string table;
    int w = 0;
    int d = 0;
    int n = 0;
    int r = 0;
    long value = 0;
};

struct StageTime {
    std::string stage;
    long millis = 0;
};

/* Everything one invocation reports: check verdicts with their
 * witnesses, merged homology tables, input identity, and stage
 * timings. Serialization is byte-deterministic; timings are emitted
 * only when requested since wall clock varies between runs. */
struct Report {
    std::string engine = "1.0.0";
    std::string input_name;
    std::string input_sha256;
    std::vector<CheckReport> checks;
    std::vector<TableCell> cells;
    std::vector<StageTime> timings;
    bool with_timings = false;
    bool gs_grading = false;

    bool all_pass() const {
        for (const CheckReport& c : checks)
            if (!c.skipped && !c.pass) return false;
        return true;
    }
};

/* Sorts by (table, w, d, n, r) and collapses duplicate keys; duplicate
 * keys with disagreeing values throw, they would mean two computations
 * of one dimension disagreed. */
void sort_cells(std::vector<TableCell>& cells);

/* Converts the check's dimension cells into table rows. */
std::vector<TableCell> cells_of(const CheckReport& c);

std::string emit_report(const Report& r, ReportFormat f);

/* Display relabeling (r, s=n) -> (p, q) = (2r, s - r) used by the
 * gs-grading flag. */
std::pair<int, int> gs_labels(int n, int r);

/* Disk cache of serialized cell tables, content-addressed by key.
 * Writes go to a temporary file first and are renamed into place, so
 * concurrent fills of one key are idempotent. The directory comes
 * from CYCHOM_CACHE_DIR, default $HOME/.cache/cychom. */
std::string cache_directory();
std::optional<std::string> cache_read(const std::string& key);
void cache_write(const std::string& key, const std::string& bytes);

std::string cells_to_bytes(const std::vector<TableCell>& cells);
/* Returns nothing if the bytes do not parse back; the caller then
 * recomputes and overwrites. */
std::optional<std::vector<TableCell>> cells_from_bytes(const std::string& bytes);

} // namespace cychom
