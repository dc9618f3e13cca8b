#include "groupgrowth.h"
extern "C" { }
