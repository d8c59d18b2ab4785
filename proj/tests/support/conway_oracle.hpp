#pragma once

// Independent brute-force Conway implementation (toroidal, Moore
// neighborhood) used as the oracle for the agent-based version. Kept free of
// any library types on purpose.

#include <vector>

namespace oracle {

inline std::vector<bool> conway_step(const std::vector<bool>& grid, int width, int height) {
  std::vector<bool> next(grid.size());
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      int neighbors = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int r = (row + dr + height) % height;
          const int c = (col + dc + width) % width;
          if (grid[static_cast<std::size_t>(r) * width + c]) ++neighbors;
        }
      }
      const bool alive = grid[static_cast<std::size_t>(row) * width + col];
      next[static_cast<std::size_t>(row) * width + col] =
          alive ? (neighbors == 2 || neighbors == 3) : (neighbors == 3);
    }
  }
  return next;
}

inline std::vector<bool> conway_generations(std::vector<bool> grid, int width, int height,
                                            int generations) {
  for (int g = 0; g < generations; ++g) grid = conway_step(grid, width, height);
  return grid;
}

}  // namespace oracle
