# Value objects