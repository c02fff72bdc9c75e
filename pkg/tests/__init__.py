# Tests for the ddqe package
