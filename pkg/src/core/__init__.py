# Core domain and business logic 