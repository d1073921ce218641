#pragma once

#include <memory>
#include <string>

#include "stackevo/game.hpp"

namespace stackevo::io {

/// Canonical JSON text of a game instance: fixed key order, compact
/// separators, doubles at 9 significant digits, one trailing newline.
/// Loading the result and saving again is byte-identical.
std::string save_game(const GameModel& game);

/// Parses an instance from JSON text and constructs the matching game.
/// Rejects malformed JSON, unknown fields at any level, missing or ill-typed
/// fields, and any instance the game constructor itself rules out; every
/// failure is a ValidationError naming the offending field.
std::unique_ptr<GameModel> load_game(const std::string& text);

std::unique_ptr<GameModel> load_game_file(const std::string& path);
void save_game_file(const GameModel& game, const std::string& path);

}  // namespace stackevo::io
