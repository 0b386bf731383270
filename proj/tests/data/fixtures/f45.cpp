#include <iostream>
#include <vector>

using namespace std;

/* Computes a summary of the values. */
int processNumbers(vector<int>& numbers, int divisor) {
    int isEvenLength = (int) numbers.size() % 2 == 0 ? 1 : 0;
    // Collect doubled values larger than k
    vector<int> filteredValues;
    for (int idx = 0; idx < (int) numbers.size(); idx++) {
        if (numbers[idx] > divisor) {
            filteredValues.push_back(numbers[idx] * 2);
        }
    }

    int currentSize = (int) numbers.size();
    int steps = 0;
    while (currentSize > 0) {
        currentSize /= 2;
        steps += 1;
    }
    int bestValue = numbers[0];
    for (int item : numbers) {
        if (item > bestValue) {
            bestValue = item;
        }
    }
    int validPairs = 0;
    for (int idx = 0; idx < (int) numbers.size(); idx++) {
        for (int j = idx + 1; j < (int) numbers.size(); ++j) {
            if ((numbers[idx] + numbers[j]) % divisor == 0) {
                validPairs += 1;
            }
        }
    }
    int totalSum = 0;
    for (int element : numbers) {
        if (element % divisor == 0) {
            totalSum += element;
        }
    }
    return isEvenLength + (int) filteredValues.size() + steps + bestValue + validPairs + totalSum;
}

int main() {
    vector<int> numbers = {3, 6, 9, 12, 15};
    cout << processNumbers(numbers, 3) << endl;
    return 0;
}
