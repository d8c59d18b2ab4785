#pragma once

#include <ostream>
#include <string>

#include "agentloop/environment.hpp"
#include "agentloop/scenarios/gol.hpp"

namespace agentloop {

/// One canonical-JSON record per line.
inline RenderFn jsonl_render(std::ostream& out) {
  return [&out](const TraceRecord& record) { out << record.to_json().dump() << '\n'; };
}

/// Compact human-readable formatter.
inline RenderFn text_render(std::ostream& out) {
  return [&out](const TraceRecord& record) {
    out << "step " << record.step << " agent " << record.agent_id << " actions "
        << nlohmann::json(record.actions).dump();
    if (!record.errors.empty()) {
      out << " errors ";
      for (const auto& e : record.errors) out << e.kind << ' ';
    }
    out << '\n';
  };
}

/// Emits one grid frame per completed generation (after the last cell's
/// buffer swap).
inline RenderFn gol_frame_render(std::ostream& out, int width, int height) {
  const std::string last_id = std::to_string(static_cast<std::size_t>(width) * height - 1);
  return [&out, width, last_id](const TraceRecord& record) {
    if (record.agent_id != last_id) return;
    out << "generation " << record.step + 1 << '\n'
        << gol::render_text(gol::previous_activity(record.post_state), width);
  };
}

}  // namespace agentloop
