# Infrastructure layer 