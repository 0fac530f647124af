// CSV serialization of sets, traces and logs. Numbers are written with 17
// significant digits so that files round-trip and compare byte-for-byte.

#ifndef MOLE_IO_HPP
#define MOLE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mole/archive.hpp"
#include "mole/descent.hpp"
#include "mole/hv_postprocess.hpp"
#include "mole/mogsa.hpp"

namespace mole {

std::string format_double(double v);

/// set_id,node_index,x1..xd,f1,f2
void write_sets_csv(std::ostream& out, const SetsArchive& archive, std::size_t dim);

/// t,x1..xd,f1,f2,alpha,mog_norm
void write_descent_trace_csv(std::ostream& out, const std::vector<DescentTraceEntry>& trace,
                             std::size_t dim);

/// Same columns as the descent trace; alpha is the distance travelled from
/// the previous visit and mog_norm is left empty.
void write_mogsa_archive_csv(std::ostream& out, const MogsaArchive& archive, std::size_t dim);

/// pass,iteration,total_gap,max_hv,inserted,descent_skipped
void write_postprocess_log_csv(std::ostream& out, const std::vector<PostProcessReport>& passes);

}  // namespace mole

#endif  // MOLE_IO_HPP
