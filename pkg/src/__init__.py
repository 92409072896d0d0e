# Balanced random walk laboratory - Hexagonal Architecture
