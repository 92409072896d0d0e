# Application services 