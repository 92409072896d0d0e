# Use cases 