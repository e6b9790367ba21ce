#pragma once

#include "ellrook/errors.hpp"
#include "ellrook/theta.hpp"
#include "ellrook/weights.hpp"
#include "ellrook/boards.hpp"
#include "ellrook/rook.hpp"
#include "ellrook/file.hpp"
#include "ellrook/jattack.hpp"
#include "ellrook/special.hpp"
#include "ellrook/biject.hpp"
#include "ellrook/harness.hpp"
