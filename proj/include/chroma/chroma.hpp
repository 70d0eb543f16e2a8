#pragma once

#include <chroma/amalgamation.hpp>
#include <chroma/constructions.hpp>
#include <chroma/diagrams.hpp>
#include <chroma/error.hpp>
#include <chroma/ordinal.hpp>
#include <chroma/rank.hpp>
#include <chroma/search.hpp>
#include <chroma/structures.hpp>
#include <chroma/walpha.hpp>
