#pragma once

#include <filesystem>
#include <vector>

#include "tad/model/timetable.h"
#include "tad/model/transfer_graph.h"

namespace tad {

// Reads stops.txt, trips.txt, stop_times.txt and the optional transfers.txt.
// Only same-stop transfers.txt rows are used; they become stop buffers.
// Throws ParseError naming the file and line.
Timetable parse_gtfs(std::filesystem::path const& dir);

// Writes the same subset back, in timetable order.
void write_gtfs(Timetable const& timetable, std::filesystem::path const& dir);

// "p <vertex_count> <edge_count>" header, then "<u> <v> <weight_seconds>".
// Blank lines and lines starting with 'c' or '#' are skipped.
TransferGraph parse_transfer_graph(std::filesystem::path const& path);
void write_transfer_graph(TransferGraph const& graph,
                          std::filesystem::path const& path);

// "<stop_id> <vertex>" per line; every stop of the timetable must appear.
std::vector<VertexId> parse_stop_mapping(std::filesystem::path const& path,
                                         Timetable const& timetable);

}  // namespace tad
