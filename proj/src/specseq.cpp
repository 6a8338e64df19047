#include "pearl/specseq.hpp"
