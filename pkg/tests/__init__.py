# Tests for hybrid-pc
