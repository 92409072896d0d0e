# Domain entities